"""Exact univariate polynomial and rational-function arithmetic over Q.

Scalars are :class:`fractions.Fraction`; a :class:`Poly` stores a tuple of
coefficients in ascending order with no trailing zeros, so structural
equality is mathematical equality.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class AlgebraError(ValueError):
    """Raised on undefined algebraic operations (division by zero etc.)."""


@total_ordering
class _NegInf:
    """Degree of the zero polynomial.

    Absorbs addition and compares below every integer.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise AlgebraError("NEG_INF - NEG_INF is undefined")
        return self

    def __mul__(self, other):
        if isinstance(other, int) and other > 0:
            return self
        raise AlgebraError("NEG_INF may only be scaled by a positive integer")

    __rmul__ = __mul__

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("NEG_INF")


NEG_INF = _NegInf()


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def _strip(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Dense polynomial in x with rational coefficients.

    ``Poly([2, -3, 1])`` is x^2 - 3x + 2.  Instances are immutable and
    hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self._c = _strip([as_rational(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p._c = coeffs
        return p

    # constructors
    @classmethod
    def x(cls) -> "Poly":
        return cls._raw((Fraction(0), Fraction(1)))

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "Poly":
        if k < 0:
            raise ValueError("monomial exponent must be nonnegative")
        return cls([0] * k + [c])

    @classmethod
    def linear(cls, slope: Scalar, intercept: Scalar = 0) -> "Poly":
        return cls([intercept, slope])

    # basic accessors
    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == _strip([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        from .polyio import print_poly

        return f"Poly({print_poly(self)!r})"

    # ring operations
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, RatFunc):
            return NotImplemented
        return Poly([other])

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self._c))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(_strip(out))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if not a or not b:
            return Poly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly._raw(_strip(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Poly._raw((Fraction(1),))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "Poly":
        c = as_rational(c)
        return Poly._raw(_strip([c * a for a in self._c]))

    def divmod(self, divisor: "Poly"):
        """Return ``(quotient, remainder)`` with ``deg remainder < deg divisor``."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise AlgebraError("zero divisor")
        rem = list(self._c)
        dd = len(divisor._c) - 1
        inv_lc = 1 / divisor._c[-1]
        if len(rem) - 1 < dd:
            return Poly._raw(()), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] * inv_lc
            if c:
                quot[k - dd] = c
                for j, dj in enumerate(divisor._c):
                    rem[k - dd + j] -= c * dj
        return Poly._raw(_strip(quot)), Poly._raw(_strip(rem[:dd]))

    __divmod__ = divmod

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return RatFunc(self, other)
        c = as_rational(other)
        if c == 0:
            raise AlgebraError("zero divisor")
        return self.scale(1 / c)

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    # evaluation and composition
    def __call__(self, value):
        if isinstance(value, Poly):
            return compose(self, value)
        if isinstance(value, RatFunc):
            acc = RatFunc.const(0)
            for c in reversed(self._c):
                acc = acc * value + c
            return acc
        if isinstance(value, (int, Fraction)):
            return eval_exact(self, value)
        return eval_numeric(self, value)

    def derivative(self) -> "Poly":
        return Poly._raw(_strip([k * c for k, c in enumerate(self._c)][1:]))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self._c[-1])

    def shift(self, s: Scalar) -> "Poly":
        """Return p(x + s)."""
        return compose(self, Poly([s, 1]))


def compose(g: Poly, h: Poly) -> Poly:
    """Return g(h(x)) by Horner's scheme."""
    acc = Poly._raw(())
    for c in reversed(g.coeffs):
        acc = acc * h
        if c:
            acc = acc + Poly._raw((c,))
    return acc


def compose_chain(factors: Sequence[Poly]) -> Poly:
    """Compose ``factors[0] ∘ factors[1] ∘ ...``."""
    if not factors:
        return Poly.x()
    acc = factors[-1]
    for f in reversed(factors[:-1]):
        acc = compose(f, acc)
    return acc


def eval_exact(p: Poly, a: Scalar) -> Fraction:
    a = as_rational(a)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * a + c
    return acc


def eval_numeric(p: Poly, z: complex) -> complex:
    z = complex(z)
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + float(c)
    return acc


# integer-content helpers -----------------------------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def primitive_part(p: Poly) -> tuple:
    """Split ``p`` as ``content * primitive`` with ``primitive`` in Z[x].

    The primitive part has a positive leading coefficient; it is returned as
    a list of ints.
    """
    if p.is_zero():
        return Fraction(0), []
    den = 1
    for c in p.coeffs:
        den = _lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [v // g for v in ints]


def _int_prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer coefficient lists (ascending)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for j, bj in enumerate(b):
            r[shift + j] -= lr * bj
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_primitive(v: list) -> list:
    g = 0
    for c in v:
        g = math.gcd(g, c)
    if v[-1] < 0:
        g = -g
    return [c // g for c in v]


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor via the primitive PRS over Z."""
    if p.is_zero() and q.is_zero():
        raise AlgebraError("gcd of two zero polynomials is undefined")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    _, a = primitive_part(p)
    _, b = primitive_part(q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, (_int_primitive(r) if r else [])
    return Poly(a).monic()


def poly_lcm(p: Poly, q: Poly) -> Poly:
    if p.is_zero() or q.is_zero():
        return Poly()
    return (p * q // poly_gcd(p, q)).monic()


def squarefree_decomposition(p: Poly) -> list:
    """Yun's algorithm: return ``[(s_1, 1), (s_2, 2), ...]``.

    Each ``s_i`` is monic, squarefree and pairwise coprime, and
    ``p = lc(p) * prod s_i**i``.  Trivial factors are omitted.
    """
    if p.degree == NEG_INF or p.degree < 1:
        return []
    f = p.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    out = []
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d) if not d.is_zero() else b
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g if not d.is_zero() else Poly()
        i += 1
    return out


def multiplicity(factor: Poly, p: Poly) -> int:
    """Largest k with ``factor**k`` dividing ``p`` (``factor`` nonconstant)."""
    if factor.degree == NEG_INF or factor.degree < 1:
        raise AlgebraError("multiplicity needs a nonconstant factor")
    if p.is_zero():
        raise AlgebraError("multiplicity in the zero polynomial is unbounded")
    k = 0
    while True:
        q, r = p.divmod(factor)
        if not r.is_zero():
            return k
        p = q
        k += 1


# rational roots ----------------------------------------------------------------

def integer_root(n: int, k: int):
    """Exact k-th root of a nonnegative integer, or None."""
    if n < 0 or k < 1:
        raise ValueError("integer_root needs n >= 0 and k >= 1")
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k)
    # Newton refine
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def rational_kth_roots(value: Scalar, k: int) -> list:
    """All rational solutions t of ``t**k == value``, positive first."""
    value = as_rational(value)
    if k < 1:
        raise ValueError("root index must be positive")
    if value == 0:
        return [Fraction(0)]
    neg = value < 0
    if neg and k % 2 == 0:
        return []
    num = integer_root(abs(value.numerator), k)
    den = integer_root(value.denominator, k)
    if num is None or den is None:
        return []
    t = Fraction(num, den)
    if neg:
        return [-t]
    return [t, -t] if k % 2 == 0 else [t]


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list:
    """Distinct rational roots of a nonzero polynomial, ascending."""
    if p.is_zero():
        raise AlgebraError("the zero polynomial vanishes everywhere")
    _, ints = primitive_part(p)
    roots = set()
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    ints = ints[k:]
    if len(ints) <= 1:
        return sorted(roots)
    q = Poly(ints)
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in roots and eval_exact(q, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


# rational functions ------------------------------------------------------------

class RatFunc:
    """Element of Q(x) in canonical form: coprime, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly([num])
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den])
        if den.is_zero():
            raise AlgebraError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc
        self.num = num.scale(1 / lc)
        self.den = den.scale(1 / lc)

    @classmethod
    def const(cls, c: Scalar) -> "RatFunc":
        return cls(Poly([c]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction)):
            return self == RatFunc(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        from .polyio import print_ratfunc

        return f"RatFunc({print_ratfunc(self)!r})"

    @staticmethod
    def _coerce(other) -> "RatFunc":
        return other if isinstance(other, RatFunc) else RatFunc(other)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise AlgebraError("zero divisor")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("integer exponent required")
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def __call__(self, value):
        return self.num(value) / self.den(value)


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)
