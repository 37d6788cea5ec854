from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from powersum_lab.algebra import Poly, compose
from powersum_lab.chebdickson import chebyshev
from powersum_lab.decompose import (
    DecompositionError,
    classify_shape,
    decompose_step,
    full_decomposition,
    h_adic_expansion,
    is_indecomposable,
    solve_outer,
)
from powersum_lab.polyio import parse_poly as P

from conftest import nonzero_polys, small_rationals

nonzero_q = small_rationals.filter(lambda v: v != 0)


def test_decompose_step_examples():
    assert decompose_step(P("x^6 - 3*x^3 + 2"), 3) == (P("x^2 - 3*x + 2"), P("x^3"))
    assert decompose_step(P("x^4 + x + 1"), 2) is None
    g, h = decompose_step(chebyshev(6), 2)
    assert h == P("x^2") and compose(g, h) == chebyshev(6)
    with pytest.raises(DecompositionError):
        decompose_step(P("x^6 + 1"), 4)


def test_h_adic_digits():
    f = P("x^5 + 2*x^3 + x")
    digits = h_adic_expansion(f, P("x^2 + 1"))
    total = Poly()
    for i, d in enumerate(digits):
        total = total + d * P("x^2 + 1") ** i
    assert total == f and all(d.is_zero() or d.degree < 2 for d in digits)


def test_full_decomposition_examples():
    assert full_decomposition(P("x^5 + x + 1")).factors == (P("x^5 + x + 1"),)
    assert full_decomposition(P("x^4")).factors == (P("x^2"), P("x^2"))
    chain = full_decomposition(P("x^6 - 3*x^3 + 2"))
    assert chain.compose() == P("x^6 - 3*x^3 + 2")
    assert [f.degree for f in chain.factors] == [2, 3]


def test_chain_factors_indecomposable():
    f = compose(compose(P("x^2 + x"), P("x^3 - x")), P("x^2 + 3*x"))
    chain = full_decomposition(f)
    assert chain.compose() == f
    assert all(f.degree >= 2 and is_indecomposable(f) for f in chain.factors)


def test_classify_examples():
    tag = classify_shape(P("x^5"))
    assert (tag.tag, tag.n, tag.l1, tag.l2) == ("cyclic", 5, P("x"), P("x"))
    h = P("2*(3*x+1)^4 - 7")
    tag = classify_shape(h)
    assert tag.tag == "cyclic" and tag.n == 4 and tag.reconstruct() == h
    tag = classify_shape(chebyshev(5))
    assert (tag.tag, tag.l1, tag.l2) == ("dihedral", P("x"), P("x"))
    h = compose(chebyshev(4), P("x - 2")).scale(3) + Poly([1])
    tag = classify_shape(h)
    assert tag.tag == "dihedral" and tag.n == 4 and tag.reconstruct() == h
    assert classify_shape(chebyshev(2)).tag == "cyclic"
    # x^3 + x^2 + 1 is dihedral: depressed p = -1/3 gives scale 3/2
    assert classify_shape(P("x^3 + x^2 + 1")).tag == "dihedral"
    assert classify_shape(P("x^4 + x + 1")).tag == "neither"
    assert classify_shape(P("x^3 + 2*x + 1")).tag == "neither"
    with pytest.raises(DecompositionError):
        classify_shape(P("x + 1"))


def test_classify_dihedral_over_c_only():
    # 4x^3 + 3x = -i·T_3(i·x)
    tag = classify_shape(P("4*x^3 + 3*x"))
    assert tag.tag == "neither" and "imaginary" in tag.note


def test_solve_outer_examples():
    U, Q = P("x^2 + 1"), P("x^3 - x")
    assert solve_outer(U, compose(U, Q)) == Q
    assert solve_outer(P("x^2"), P("x^2 + 1")) is None
    U = P("3*x^3 - x + 5")
    assert solve_outer(U, U) == P("x")


@settings(max_examples=40, deadline=None)
@given(nonzero_polys(2, 4), nonzero_polys(2, 4))
def test_round_trip(g, h):
    assume(g.degree >= 2 and h.degree >= 2)
    f = compose(g, h)
    g2, h2 = decompose_step(f, h.degree)
    assert compose(g2, h2) == f and h2.lc == 1 and h2.coeff(0) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), nonzero_q, small_rationals, nonzero_q, small_rationals, st.booleans())
def test_constructed_shapes(n, a, b, c, d, dihedral):
    assume(n >= 3 or not dihedral)
    core = chebyshev(n) if dihedral else Poly.monomial(n)
    h = compose(Poly([b, a]), compose(core, Poly([d, c])))
    tag = classify_shape(h)
    assert tag.tag == ("dihedral" if dihedral else "cyclic") and tag.n == n
    assert tag.reconstruct() == h


@settings(max_examples=40, deadline=None)
@given(nonzero_polys(1, 4), nonzero_polys(1, 4))
def test_solve_outer_recovers(U, Q):
    assume(U.degree >= 1 and Q.degree >= 1)
    V = compose(U, Q)
    found = solve_outer(U, V)
    assert found is not None and compose(U, found) == V
