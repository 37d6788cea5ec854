"""Standard and specific pairs of the Bilu-Tichy criterion over Q.

Only constructors, a witness verifier and the third-kind exclusion
computation are provided; deciding whether an arbitrary (f, g) admits a
standard-pair decomposition is out of scope.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Optional, Sequence

from .algebra import NEG_INF, Poly, as_rational, compose
from .chebdickson import dickson
from .recurrence import PowerSumForm, check_desired_structure

KINDS = ("first", "second", "third", "fourth", "fifth", "specific")


class PairRestrictionError(ValueError):
    pass


@dataclass(frozen=True)
class StandardPair:
    kind: str
    params: dict = field(hash=False, compare=False)
    left: Poly = None
    right: Poly = None


def _nonzero(value, name: str) -> Fraction:
    value = as_rational(value)
    if value == 0:
        raise PairRestrictionError(f"{name} must be nonzero")
    return value


def _as_poly(value, name: str) -> Poly:
    if isinstance(value, Poly):
        p = value
    else:
        p = Poly([value])
    if p.is_zero():
        raise PairRestrictionError(f"{name} must be a nonzero polynomial")
    return p


def _positive_int(value, name: str, minimum: int = 1) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise PairRestrictionError(f"{name} must be an integer >= {minimum}")
    return value


def make_standard_pair(kind: str, switched: bool = False, **params) -> StandardPair:
    """Build the pair of the given kind; restriction violations name the clause.

    >>> make_standard_pair("fifth", a=1).right.coeffs[-2:]
    (Fraction(-4, 1), Fraction(3, 1))
    """
    x = Poly.x()
    if kind == "first":
        m = _positive_int(params.get("m"), "m")
        n = params.get("n")
        if not isinstance(n, int) or not 0 <= n < m:
            raise PairRestrictionError("first kind requires 0 <= n < m")
        if gcd(n, m) != 1:
            raise PairRestrictionError("first kind requires gcd(n, m) = 1")
        a = _nonzero(params.get("a", 1), "a")
        p = _as_poly(params.get("p", 1), "p")
        if n + p.degree <= 0:
            raise PairRestrictionError("first kind requires n + deg p > 0")
        left, right = x ** m, (x ** n * p ** m).scale(a)
    elif kind == "second":
        a = _nonzero(params.get("a"), "a")
        b = _nonzero(params.get("b"), "b")
        p = _as_poly(params.get("p", 1), "p")
        left, right = x ** 2, Poly([b, 0, a]) * p ** 2
    elif kind == "third":
        m = _positive_int(params.get("m"), "m")
        n = _positive_int(params.get("n"), "n")
        if gcd(m, n) != 1:
            raise PairRestrictionError("third kind requires gcd(m, n) = 1")
        a = _nonzero(params.get("a"), "a")
        left, right = dickson(m, a ** n), dickson(n, a ** m)
    elif kind == "fourth":
        m = _positive_int(params.get("m"), "m")
        n = _positive_int(params.get("n"), "n")
        if gcd(m, n) != 2:
            raise PairRestrictionError("fourth kind requires gcd(m, n) = 2")
        a = _nonzero(params.get("a"), "a")
        b = _nonzero(params.get("b"), "b")
        # a^(-m/2) = (1/a)^(m/2) is rational because m is even
        left = dickson(m, a).scale((1 / a) ** (m // 2))
        right = dickson(n, b).scale(-((1 / b) ** (n // 2)))
    elif kind == "fifth":
        a = _nonzero(params.get("a", 1), "a")
        left, right = Poly([-1, 0, a]) ** 3, Poly([0, 0, 0, -4, 3])
    elif kind == "specific":
        m = _positive_int(params.get("m"), "m")
        n = _positive_int(params.get("n"), "n")
        d = gcd(m, n)
        if d < 3:
            raise PairRestrictionError("specific pair requires d = gcd(m, n) >= 3")
        if d != 3:
            raise PairRestrictionError(
                f"specific pair with d = {d} needs cos(pi/{d}) in Q; only d = 3 qualifies")
        r = _nonzero(params.get("r"), "r")
        half = Fraction(1, 2)  # cos(pi/3)
        left = dickson(m, r ** (n // d))
        right = -compose(dickson(n, r ** (m // d)), Poly([0, half]))
    else:
        raise PairRestrictionError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if switched:
        left, right = right, left
    return StandardPair(kind, dict(params, switched=switched), left, right)


def _is_linear(p: Poly) -> bool:
    return p.degree == 1


def verify_bilu_tichy_shape(f: Poly, g: Poly, phi: Poly, pair: StandardPair,
                            lam: Poly, mu: Poly) -> bool:
    """Check f = φ∘left∘λ and g = φ∘right∘μ exactly."""
    if not (_is_linear(lam) and _is_linear(mu)):
        raise PairRestrictionError("λ and μ must be linear with nonzero leading coefficient")
    return (compose(phi, compose(pair.left, lam)) == f
            and compose(phi, compose(pair.right, mu)) == g)


def verify_half(f: Poly, phi: Poly, inner: Poly, lam: Poly) -> bool:
    """One side of the shape check: f = φ∘inner∘λ."""
    if not _is_linear(lam):
        raise PairRestrictionError("λ must be linear with nonzero leading coefficient")
    return compose(phi, compose(inner, lam)) == f


# third-kind exclusion ------------------------------------------------------------

DEFAULT_EXCLUSION_GRID = (
    (1, 1, 0, 1),
    (1, 1, 1, 1),
    (2, -1, 0, 3),
    (Fraction(1, 2), 3, Fraction(-2, 3), 2),
    (-3, Fraction(1, 2), 0, Fraction(-1, 4)),
    (5, 2, 7, -1),
    (Fraction(-2, 7), -3, 0, Fraction(5, 2)),
    (1, Fraction(-1, 3), Fraction(1, 5), Fraction(9, 4)),
    (-1, 4, 0, -2),
)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class ExclusionRow:
    a: Fraction
    c: Fraction
    d: Fraction
    r: Fraction
    coeff_top_minus_1: Fraction  # coefficient of x^(p-1)
    coeff_top_minus_2: Fraction  # coefficient of x^(p-2)
    closed_form_agrees: bool

    @property
    def excluded(self) -> bool:
        return self.coeff_top_minus_1 != 0 or self.coeff_top_minus_2 != 0


@dataclass(frozen=True)
class ExclusionReport:
    p: int
    n: int
    u_degree: object
    u_top_coeffs: tuple  # U_n coefficients at deg-1 and deg-2
    rows: tuple

    @property
    def holds(self) -> bool:
        return all(row.excluded and row.closed_form_agrees for row in self.rows)


def exclusion_check_third_kind(U: PowerSumForm, n: int, p: int,
                               grid: Optional[Sequence] = None) -> ExclusionReport:
    """Show a·D_p(cx + d, r) + b cannot match a U_n with vanishing η_(ℓ-1), η_(ℓ-2).

    For each grid point the coefficients of x^(p-1) and x^(p-2) are computed
    both by exact expansion and by their closed forms
    a·p·c^(p-1)·d and a·c^(p-2)·(d_(p-2) + C(p,2)·d^2).
    """
    structure = check_desired_structure(U, n)
    if not structure.eta_vanishing_ok:
        raise PairRestrictionError("precondition: U_n must have η_(ℓ-1) = η_(ℓ-2) = 0")
    if not _is_prime(p) or p < 3:
        raise PairRestrictionError("p must be an odd prime")
    Un = U.term(n)
    du = Un.degree
    top = (Un.coeff(du - 1), Un.coeff(du - 2)) if du != NEG_INF and du >= 2 else ()
    d_p_minus_2 = Fraction(p, p - 1) * comb(p - 1, 1)
    rows = []
    for point in (grid if grid is not None else DEFAULT_EXCLUSION_GRID):
        a, c, d, r = (as_rational(v) for v in point)
        if a == 0 or c == 0:
            raise PairRestrictionError("grid points need a != 0 and c != 0")
        if r == 0:
            raise PairRestrictionError("r = 0 degenerates D_p to x^p (cyclic); excluded from the grid")
        expanded = compose(dickson(p, r), Poly([d, c])).scale(a)
        e1, e2 = expanded.coeff(p - 1), expanded.coeff(p - 2)
        closed1 = a * p * c ** (p - 1) * d
        closed2 = a * c ** (p - 2) * (-d_p_minus_2 * r + comb(p, 2) * d ** 2)
        rows.append(ExclusionRow(a, c, d, r, e1, e2, e1 == closed1 and e2 == closed2))
    return ExclusionReport(p, n, du, top, tuple(rows))
