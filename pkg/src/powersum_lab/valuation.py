"""Discrete valuations and the projective height on Q(x).

Finite places are indexed by monic squarefree polynomials from a coprime
basis of the supports involved; below a degree cap they are refined to
Q-irreducible factors.  A place of degree k stands for k complex places
with equal valuation, so every sum here is weighted by place degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .algebra import (
    Poly,
    RatFunc,
    multiplicity,
    poly_gcd,
    rational_roots,
    squarefree_decomposition,
)

IRREDUCIBILITY_DEGREE_CAP = 6


class ValuationError(ValueError):
    pass


class _InfiniteHeight:
    """Height of 0.  Comparisons work; arithmetic is refused."""

    def __repr__(self):
        return "INFINITE_HEIGHT"

    def __str__(self):
        return "inf"

    def _refuse(self, *args):
        raise ValuationError("arithmetic with the infinite height of 0 is not allowed")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _refuse

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self


INFINITE_HEIGHT = _InfiniteHeight()


@dataclass(frozen=True)
class Place:
    """A place of Q(x): ``Place.infinity()`` or a finite place ``p``.

    ``irreducible`` is True when p was checked irreducible over Q, None when
    p exceeded the degree cap and was only made squarefree.
    """

    poly: Optional[Poly] = None
    irreducible: Optional[bool] = None

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None, True)

    @classmethod
    def finite(cls, p: Poly, degree_cap: int = IRREDUCIBILITY_DEGREE_CAP) -> "Place":
        """Place at a user-supplied polynomial; reducible input is rejected."""
        if p.is_constant():
            raise ValuationError("a finite place needs a nonconstant polynomial")
        p = p.monic()
        if p.degree == 1:
            return cls(p, True)
        if p.degree > degree_cap:
            return cls(p, None)
        if len(_factor_over_q(p)) != 1:
            raise ValuationError("place polynomial is reducible over Q")
        return cls(p, True)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @property
    def status(self) -> str:
        if self.irreducible is None:
            return "unverified-irreducible"
        return "irreducible" if self.irreducible else "reducible"

    def label(self) -> str:
        from .polyio import print_poly

        return "inf" if self.poly is None else print_poly(self.poly)


def _as_ratfunc(f) -> RatFunc:
    return f if isinstance(f, RatFunc) else RatFunc(f)


def valuation(f, place: Place) -> int:
    """Order of ``f`` at ``place`` (per complex place over it)."""
    f = _as_ratfunc(f)
    if f.is_zero():
        raise ValuationError("valuation of zero undefined")
    if place.is_infinite:
        return f.den.degree - f.num.degree
    p = place.poly
    # a reducible squarefree p still has one multiplicity when it divides
    # a basis element; valuations here are only requested for such p
    return multiplicity(p, f.num) - multiplicity(p, f.den)


def height(f, allow_infinite: bool = False):
    """Projective height: number of poles with multiplicity, infinity included."""
    f = _as_ratfunc(f)
    if f.is_zero():
        if allow_infinite:
            return INFINITE_HEIGHT
        raise ValuationError("height of zero is infinite")
    return max(f.num.degree, f.den.degree)


# place enumeration -------------------------------------------------------------

def _coprime_basis(polys: Iterable[Poly]) -> list:
    basis = [p.monic() for p in polys if p.degree > 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                g = poly_gcd(basis[i], basis[j])
                if g.degree > 0:
                    u, v = basis[i] // g, basis[j] // g
                    rest = [b for k, b in enumerate(basis) if k not in (i, j)]
                    basis = rest + [q.monic() for q in (g, u, v) if q.degree > 0]
                    changed = True
                    break
            if changed:
                break
    # dedupe exact repeats
    out = []
    for b in basis:
        if b not in out:
            out.append(b)
    return out


def _factor_over_q(p: Poly) -> list:
    """Monic Q-irreducible factors of a squarefree p."""
    return [Poly(c) for c in _factor_coeffs(p.monic().coeffs)]


@lru_cache(maxsize=4096)
def _factor_coeffs(coeffs: tuple) -> tuple:
    p = Poly(coeffs)
    if p.degree <= 3:
        # a squarefree cubic or quadratic is irreducible iff it has no rational root
        out, rest = [], p
        for r in rational_roots(p):
            lin = Poly([-r, 1])
            out.append(lin)
            rest = rest // lin
        if rest.degree > 0:
            out.append(rest.monic())
        return tuple(f.coeffs for f in out)
    import sympy

    t = sympy.Symbol("t")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ")
    _, factors = sp.factor_list()
    out = []
    for fac, _mult in factors:
        cs = fac.all_coeffs()[::-1]
        out.append(Poly([Fraction(int(c.p), int(c.q)) for c in cs]).monic().coeffs)
    return tuple(out)


def places_of(fs: Sequence, degree_cap: int = IRREDUCIBILITY_DEGREE_CAP) -> list:
    """All places where some nonzero element of ``fs`` has nonzero valuation.

    Finite places come first, sorted by (degree, coefficients); infinity is
    always included last since it is cheap and harmless when ν_∞ = 0.
    """
    supports = []
    for f in fs:
        f = _as_ratfunc(f)
        if f.is_zero():
            continue
        for part in (f.num, f.den):
            supports.extend(s for s, _ in squarefree_decomposition(part))
    basis = _coprime_basis(supports)
    places = []
    for b in basis:
        if b.degree == 1:
            places.append(Place(b, True))
        elif b.degree <= degree_cap:
            for fac in _factor_over_q(b):
                places.append(Place(fac, True))
        else:
            places.append(Place(b, None))
    places.sort(key=lambda pl: (pl.poly.degree, pl.poly.coeffs))
    places.append(Place.infinity())
    return places


def height_by_places(f, degree_cap: int = IRREDUCIBILITY_DEGREE_CAP) -> int:
    """Height as -Σ deg(P)·min(0, ν_P(f)) over enumerated places."""
    f = _as_ratfunc(f)
    if f.is_zero():
        raise ValuationError("height of zero is infinite")
    return -sum(pl.degree * min(0, valuation(f, pl)) for pl in places_of([f], degree_cap))


def height_tuple(fs: Sequence, degree_cap: int = IRREDUCIBILITY_DEGREE_CAP) -> int:
    """H(u_1, ..., u_n) = -Σ_ν min_i ν(u_i), zero entries ignored."""
    items = [_as_ratfunc(f) for f in fs]
    if not items:
        raise ValuationError("height of an empty tuple")
    nonzero = [f for f in items if not f.is_zero()]
    if not nonzero:
        raise ValuationError("height of the all-zero tuple is undefined")
    total = 0
    for pl in places_of(nonzero, degree_cap):
        total -= pl.degree * min(valuation(f, pl) for f in nonzero)
    return total


def valuation_table(f, degree_cap: int = IRREDUCIBILITY_DEGREE_CAP) -> list:
    """``[(place, ν_place(f)), ...]`` over the support of f plus infinity."""
    f = _as_ratfunc(f)
    if f.is_zero():
        raise ValuationError("valuation of zero undefined")
    return [(pl, valuation(f, pl)) for pl in places_of([f], degree_cap)]


@dataclass(frozen=True)
class SumFormulaReport:
    lhs_sum: int
    holds: bool
    terms: tuple


def check_sum_formula(f, degree_cap: int = IRREDUCIBILITY_DEGREE_CAP) -> SumFormulaReport:
    table = valuation_table(f, degree_cap)
    terms = tuple((pl.label(), pl.degree, v) for pl, v in table)
    total = sum(deg * v for _, deg, v in terms)
    return SumFormulaReport(total, total == 0, terms)


@dataclass(frozen=True)
class EqualityReport:
    sum_applicable: bool
    sum_equality: bool
    prod_applicable: bool
    prod_equality: bool
    reason: str = ""

    @property
    def consistent(self) -> bool:
        """False only if an equality hypothesis held but the equality failed."""
        return (not self.sum_applicable or self.sum_equality) and (
            not self.prod_applicable or self.prod_equality)


def check_height_equality_conditions(f, g, degree_cap: int = IRREDUCIBILITY_DEGREE_CAP) -> EqualityReport:
    """Evaluate the equality cases H(f+g) = H(f)+H(g) and H(fg) = H(f)+H(g).

    The sum case needs ν(f) ≠ ν(g) and max(ν(f), ν(g)) > 0 at every place
    where either valuation is nonzero; the product case needs ν(f)ν(g) > 0
    there.  Both equalities are computed regardless of applicability.
    """
    f, g = _as_ratfunc(f), _as_ratfunc(g)
    if f.is_zero() or g.is_zero():
        raise ValuationError("equality conditions need nonzero f and g")
    vals = []
    for pl in places_of([f, g], degree_cap):
        vf, vg = valuation(f, pl), valuation(g, pl)
        if vf or vg:
            vals.append((vf, vg))
    sum_ok = all(vf != vg and max(vf, vg) > 0 for vf, vg in vals)
    prod_ok = all(vf * vg > 0 for vf, vg in vals)
    hf, hg = height(f), height(g)
    total = f + g
    reason = ""
    if total.is_zero():
        sum_ok, sum_eq = False, False
        reason = "f + g = 0, height undefined"
    else:
        sum_eq = height(total) == hf + hg
    prod_eq = height(f * g) == hf + hg
    return EqualityReport(sum_ok, sum_eq, prod_ok, prod_eq, reason)
