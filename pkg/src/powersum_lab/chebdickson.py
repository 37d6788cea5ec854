"""Chebyshev and Dickson polynomial families and their exact identities."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .algebra import Poly, RatFunc, compose, as_rational

DEFAULT_DEGREE_BUDGET = 64


class BudgetExceeded(ValueError):
    pass


def _check_budget(degree: int, budget: int):
    if degree > budget:
        raise BudgetExceeded(f"degree {degree} exceeds budget {budget}")


@lru_cache(maxsize=None)
def chebyshev(n: int) -> Poly:
    """T_n via T_{n+2} = 2x T_{n+1} - T_n."""
    if n < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    if n == 0:
        return Poly([1])
    if n == 1:
        return Poly.x()
    two_x = Poly([0, 2])
    prev, cur = Poly([1]), Poly.x()
    for _ in range(n - 1):
        prev, cur = cur, two_x * cur - prev
    return cur


def dickson(n: int, r) -> Poly:
    """Dickson polynomial D_n(x, r) from its closed form.

    D_0 is taken to be 2, matching D_n(y + r/y, r) = y^n + (r/y)^n.
    """
    if n < 0:
        raise ValueError("Dickson index must be nonnegative")
    r = as_rational(r)
    if n == 0:
        return Poly([2])
    coeffs = [Fraction(0)] * (n + 1)
    for j in range(n // 2 + 1):
        coeffs[n - 2 * j] = Fraction(n, n - j) * comb(n - j, j) * (-r) ** j
    return Poly(coeffs)


def dickson_by_recurrence(n: int, r) -> Poly:
    """D_n(x, r) from D_{n+2} = x D_{n+1} - r D_n, D_0 = 2, D_1 = x."""
    r = as_rational(r)
    if n == 0:
        return Poly([2])
    prev, cur = Poly([2]), Poly.x()
    x = Poly.x()
    for _ in range(n - 1):
        prev, cur = cur, x * cur - prev.scale(r)
    return cur


def verify_dickson_composition(k: int, l: int, r, budget: int = DEFAULT_DEGREE_BUDGET) -> bool:
    """Check D_{kl}(x, r) == D_k(D_l(x, r), r^l) exactly."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    _check_budget(k * l, budget)
    r = as_rational(r)
    return dickson(k * l, r) == compose(dickson(k, r ** l), dickson(l, r))


def verify_chebyshev_composition(m: int, n: int, budget: int = DEFAULT_DEGREE_BUDGET) -> bool:
    _check_budget(m * n, budget)
    return chebyshev(m * n) == compose(chebyshev(m), chebyshev(n))


def verify_chebyshev_product(n: int, m: int, k: int, budget: int = DEFAULT_DEGREE_BUDGET) -> bool:
    """Check T_{nk} T_{mk} = (T_{nk+mk} + T_{nk-mk}) / 2.

    Also checks the rewritten form T_{nk+mk} + T_{nk-mk} = 2 (T_n T_m)∘T_k.
    """
    if min(n, m, k) < 1 or n < m:
        raise ValueError("need positive n >= m and positive k")
    _check_budget((n + m) * k, budget)
    lhs = chebyshev(n * k) * chebyshev(m * k)
    total = chebyshev(n * k + m * k) + chebyshev(n * k - m * k)
    rewritten = compose((chebyshev(n) * chebyshev(m)).scale(2), chebyshev(k))
    return lhs.scale(2) == total and total == rewritten


def dickson_functional_identity_check(n: int, r, budget: int = DEFAULT_DEGREE_BUDGET) -> bool:
    """Check D_n(y + r/y, r) = y^n + (r/y)^n in Q(y)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_budget(n, budget)
    r = as_rational(r)
    y = RatFunc(Poly.x())
    arg = y + RatFunc(Poly([r]), Poly.x())
    lhs = dickson(n, r)(arg)
    rhs = y ** n + (RatFunc(Poly([r])) / y) ** n
    return lhs == rhs


def chebyshev_dickson_bridge(n: int) -> bool:
    """Check 2 T_n(x/2) == D_n(x, 1)."""
    return compose(chebyshev(n), Poly([0, Fraction(1, 2)])).scale(2) == dickson(n, 1)
