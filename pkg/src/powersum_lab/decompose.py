"""Functional decomposition of polynomials over Q.

A right factor of prescribed degree is pinned down by requiring it to be
monic with zero constant term; it is recovered from the top coefficients of
f and certified by an h-adic expansion, so no root finding is needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import NEG_INF, Poly, compose, compose_chain, rational_kth_roots, rational_roots
from .chebdickson import chebyshev


class DecompositionError(ValueError):
    pass


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def h_adic_expansion(f: Poly, h: Poly) -> list:
    """Digits ``a_i`` with ``f = Σ a_i h^i`` and ``deg a_i < deg h``."""
    if h.degree == NEG_INF or h.degree < 1:
        raise DecompositionError("h-adic expansion needs a nonconstant h")
    digits = []
    rest = f
    while not rest.is_zero():
        rest, digit = rest.divmod(h)
        digits.append(digit)
    return digits


def outer_from_inner(f: Poly, h: Poly) -> Optional[Poly]:
    """Return g with g∘h = f, or None if f is not a polynomial in h."""
    digits = h_adic_expansion(f, h)
    if any(d.degree != NEG_INF and d.degree > 0 for d in digits):
        return None
    return Poly([d.coeff(0) for d in digits])


def _approximate_right_factor(f: Poly, r: int) -> Poly:
    """Monic h of degree r, h(0) = 0, whose s-th power matches f/lc(f) on top."""
    n = f.degree
    s = n // r
    target = f.monic()
    h = [Fraction(0)] * r + [Fraction(1)]
    for k in range(1, r):
        # coefficient of x^(n-k) in h^s is s*h_{r-k} + (terms in known coefficients)
        h[r - k] = Fraction(0)
        current = Poly(h) ** s
        h[r - k] = (target.coeff(n - k) - current.coeff(n - k)) / s
    return Poly(h)


def decompose_step(f: Poly, r: int):
    """Find (g, h) with f = g∘h, deg h = r, h monic and h(0) = 0.

    Returns None when no such decomposition exists over Q.
    """
    n = f.degree
    if n == NEG_INF or n < 1:
        raise DecompositionError("cannot decompose a constant polynomial")
    if r < 1 or n % r:
        raise DecompositionError(f"degree {r} does not divide deg f = {n}")
    h = _approximate_right_factor(f, r)
    g = outer_from_inner(f, h)
    if g is None:
        return None
    if compose(g, h) != f:
        raise AssertionError("h-adic certificate disagreed with recomposition")
    return g, h


@dataclass(frozen=True)
class DecompositionChain:
    """``f = factors[0] ∘ factors[1] ∘ ... ∘ factors[-1]``."""

    factors: tuple
    normalization: tuple = field(default=())

    def compose(self) -> Poly:
        return compose_chain(list(self.factors))


def find_right_factor(f: Poly):
    """Smallest-degree nontrivial decomposition of f, or None."""
    n = f.degree
    for r in _divisors(n)[1:-1]:
        found = decompose_step(f, r)
        if found is not None:
            return found
    return None


def is_indecomposable(f: Poly) -> bool:
    if f.degree == NEG_INF or f.degree < 2:
        return False
    return find_right_factor(f) is None


def full_decomposition(f: Poly) -> DecompositionChain:
    """Greedy chain of indecomposables.

    Each step splits off the right factor of least degree; that factor is
    indecomposable, since a split of it would give a smaller right factor.
    Right factors are monic with zero constant term and the leftmost factor
    absorbs the remaining linear freedom.
    """
    if f.degree == NEG_INF or f.degree < 1:
        raise DecompositionError("full decomposition needs deg f >= 1")
    rights = []
    notes = []
    current = f
    while current.degree >= 2:
        found = find_right_factor(current)
        if found is None:
            break
        g, h = found
        rights.append(h)
        notes.append("right factor of degree %d normalized monic with h(0) = 0" % h.degree)
        current = g
    factors = (current,) + tuple(reversed(rights))
    chain = DecompositionChain(factors, tuple(reversed(notes)))
    if chain.compose() != f:
        raise AssertionError("decomposition chain does not recompose to f")
    return chain


# cyclic / dihedral shapes ------------------------------------------------------

@dataclass(frozen=True)
class ShapeTag:
    """``tag`` is 'cyclic', 'dihedral' or 'neither'.

    For the first two, ``h == compose(l1, compose(core, l2))`` where core is
    x^n or T_n.
    """

    tag: str
    n: int
    l1: Optional[Poly] = None
    l2: Optional[Poly] = None
    note: str = ""

    def core(self) -> Optional[Poly]:
        if self.tag == "cyclic":
            return Poly.monomial(self.n)
        if self.tag == "dihedral":
            return chebyshev(self.n)
        return None

    def reconstruct(self) -> Optional[Poly]:
        core = self.core()
        if core is None:
            return None
        return compose(self.l1, compose(core, self.l2))


def cyclic_witness(h: Poly) -> Optional[ShapeTag]:
    """h = lc·(x + s)^n + δ, read off from the x^(n-1) coefficient."""
    n = h.degree
    shift = h.coeff(n - 1) / (n * h.lc)
    core = Poly([shift, 1]) ** n
    rest = h - core.scale(h.lc)
    if rest.degree != NEG_INF and rest.degree > 0:
        return None
    return ShapeTag("cyclic", n, Poly([rest.coeff(0), h.lc]), Poly([shift, 1]))


def _dihedral(h: Poly) -> tuple:
    n = h.degree
    shift = h.coeff(n - 1) / (n * h.lc)
    centered = h.shift(-shift)  # H(y) = h(y - shift), no y^(n-1) term
    if centered.coeff(n - 2) == 0:
        return None, ""
    # T_n(beta*y): ratio of y^(n-2) to y^n coefficients is -n / (4 beta^2)
    beta_sq = -Fraction(n) * centered.lc / (4 * centered.coeff(n - 2))
    if beta_sq < 0:
        return None, "Chebyshev core would need an imaginary scale; only Q-witnesses are excluded"
    roots = rational_kth_roots(beta_sq, 2)
    if not roots:
        return None, "Chebyshev core would need an irrational scale; only Q-witnesses are excluded"
    beta = roots[0]
    tn = chebyshev(n)
    scaled = compose(tn, Poly([0, beta]))
    amp = centered.lc / scaled.lc
    offset = centered.coeff(0) - amp * scaled.coeff(0)
    l1 = Poly([offset, amp])
    l2 = Poly([beta * shift, beta])
    tag = ShapeTag("dihedral", n, l1, l2)
    if tag.reconstruct() != h:
        return None, ""
    return tag, ""


def classify_shape(h: Poly) -> ShapeTag:
    """Tag h as cyclic (l1∘x^n∘l2), dihedral (l1∘T_n∘l2, n >= 3) or neither.

    The cyclic test runs first, so every quadratic is tagged cyclic.
    Witnesses are verified by exact recomposition before being returned.
    """
    if h.degree == NEG_INF or h.degree < 2:
        raise DecompositionError("classify_shape needs deg h >= 2")
    tag = cyclic_witness(h)
    if tag is not None:
        if tag.reconstruct() != h:
            raise AssertionError("cyclic witness failed to reproduce h")
        return tag
    note = ""
    if h.degree >= 3:
        tag, note = _dihedral(h)
        if tag is not None:
            return tag
    return ShapeTag("neither", h.degree, note=note)


# outer-prescribed decomposition ------------------------------------------------

def solve_outer(U: Poly, V: Poly) -> Optional[Poly]:
    """Return Q over Q with V = U∘Q, or None.

    When two leading coefficients are possible the positive one is tried
    first.  Every returned Q is verified by recomposition.
    """
    du = U.degree
    if du == NEG_INF or du < 1:
        raise DecompositionError("solve_outer needs deg U >= 1")
    if V.is_zero():
        candidates = [Poly([c]) for c in rational_roots(U)]
        return candidates[0] if candidates else None
    dv = V.degree
    if dv % du:
        return None
    k = dv // du
    if k == 0:
        for c in rational_roots(U - V):
            return Poly([c])
        return None
    for lead in rational_kth_roots(V.lc / U.lc, du):
        q = [Fraction(0)] * k + [lead]
        pivot = du * U.lc * lead ** (du - 1)
        for j in range(1, k + 1):
            q[k - j] = Fraction(0)
            current = compose(U, Poly(q))
            q[k - j] = (V.coeff(dv - j) - current.coeff(dv - j)) / pivot
        Q = Poly(q)
        if compose(U, Q) == V:
            return Q
    return None
