from fractions import Fraction

import pytest

from powersum_lab.algebra import Poly
from powersum_lab.chebdickson import (
    BudgetExceeded,
    chebyshev,
    chebyshev_dickson_bridge,
    dickson,
    dickson_by_recurrence,
    dickson_functional_identity_check,
    verify_chebyshev_composition,
    verify_chebyshev_product,
    verify_dickson_composition,
)
from powersum_lab.decompose import full_decomposition
from powersum_lab.polyio import parse_poly as P


def test_chebyshev_values():
    assert chebyshev(0) == Poly([1]) and chebyshev(1) == P("x")
    assert chebyshev(2) == P("2*x^2 - 1")
    assert chebyshev(6) == P("32*x^6 - 48*x^4 + 18*x^2 - 1")


def test_dickson_values():
    r = Fraction(5, 3)
    assert dickson(1, r) == P("x")
    assert dickson(2, r) == P("x^2") - Poly([2 * r])
    assert dickson(3, r) == P("x^3") - P("x").scale(3 * r)
    assert dickson(0, r) == Poly([2])
    assert dickson(5, 0) == P("x^5")


@pytest.mark.parametrize("r", [1, -1, 2, -2, Fraction(3, 2)])
def test_dickson_closed_form_matches_recurrence(r):
    for n in range(12):
        assert dickson(n, r) == dickson_by_recurrence(n, r)


def test_dickson_composition():
    assert dickson(4, 1) == P("x^4 - 4*x^2 + 2")
    assert verify_dickson_composition(2, 2, 1)
    assert all(verify_dickson_composition(1, l, 3) for l in range(1, 6))
    assert verify_dickson_composition(3, 2, 2)
    with pytest.raises(BudgetExceeded):
        verify_dickson_composition(9, 9, 1)


def test_chebyshev_product():
    assert chebyshev(1) * chebyshev(1) == P("x^2")
    assert verify_chebyshev_product(1, 1, 1)
    assert verify_chebyshev_product(2, 1, 1)
    assert verify_chebyshev_product(2, 1, 3)
    assert all(verify_chebyshev_composition(m, n) for m in range(1, 6) for n in range(1, 6))


def test_functional_identity():
    assert dickson_functional_identity_check(0, 7)
    assert dickson_functional_identity_check(2, Fraction(1, 3))
    assert dickson_functional_identity_check(5, 3)
    assert all(chebyshev_dickson_bridge(n) for n in range(10))


@pytest.mark.parametrize("m, n, k", [(1, 2, 2), (2, 3, 2), (1, 3, 3), (2, 5, 2)])
def test_cyclic_counterexample(m, n, k):
    # u_j = x^j + 1 gives u_{mk} + u_{nk} = (x^m + x^n + 2) ∘ x^k
    u = lambda j: P("x").__pow__(j) + Poly([1])
    total = u(m * k) + u(n * k)
    assert total == P(f"x^{m} + x^{n} + 2")(P(f"x^{k}"))
    assert full_decomposition(total).compose() == total
