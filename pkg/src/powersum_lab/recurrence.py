"""Polynomial linear recurrences: terms, power sums, structure checks, roots."""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import NEG_INF, Poly, eval_numeric
from .decompose import cyclic_witness
from .polyio import RecurrenceSpec

DEFAULT_TOL = 1e-8
MAX_SAMPLE_MODULUS = 4.0


class RecurrenceError(ValueError):
    pass


def _deg(p: Poly):
    return p.degree


# term generation ----------------------------------------------------------------

def generate_terms(spec: RecurrenceSpec, n_max: int) -> list:
    """W_0, ..., W_{n_max} by exact recurrence."""
    d = spec.order
    if n_max < d - 1:
        raise RecurrenceError(f"n_max must be at least order - 1 = {d - 1}")
    terms = list(spec.initial)
    while len(terms) <= n_max:
        nxt = Poly()
        for i, c in enumerate(spec.coeffs):
            nxt = nxt + c * terms[-1 - i]
        terms.append(nxt)
    return terms[: n_max + 1]


@dataclass(frozen=True)
class PowerSumForm:
    """U_n = Σ a_i α_i^n with polynomial a_i and characteristic roots α_i."""

    pairs: tuple

    def __post_init__(self):
        pairs = tuple((a, al) for a, al in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if len(pairs) < 2:
            raise RecurrenceError("a power sum needs at least two terms (d >= 2)")
        alphas = [al for _, al in pairs]
        if len(set(alphas)) != len(alphas):
            raise RecurrenceError("characteristic roots must be pairwise distinct")

    @property
    def d(self) -> int:
        return len(self.pairs)

    def term(self, n: int) -> Poly:
        total = Poly()
        for a, al in self.pairs:
            total = total + a * al ** n
        return total

    def characteristic_coeffs(self) -> tuple:
        """Recurrence coefficients from prod (T - α_i), highest term first."""
        # build prod (T - alpha_i) with Poly coefficients, ascending in T
        char = [Poly([1])]
        for _, al in self.pairs:
            shifted = [Poly()] + char
            scaled = [-al * c for c in char] + [Poly()]
            char = [u + v for u, v in zip(shifted, scaled)]
        d = self.d
        # T^d = sum_i coeffs[i] T^(d-1-i)
        return tuple(-char[d - 1 - i] for i in range(d))

    def to_spec(self) -> RecurrenceSpec:
        initial = tuple(self.term(n) for n in range(self.d))
        return RecurrenceSpec(self.d, self.characteristic_coeffs(), initial, self.pairs)


def power_sum_from_spec(spec: RecurrenceSpec) -> Optional[PowerSumForm]:
    return PowerSumForm(spec.power_sum) if spec.power_sum is not None else None


def check_power_sum_consistency(spec: RecurrenceSpec, n_max: int = 10) -> bool:
    """Terms of ``spec`` agree with its declared power sum for n <= n_max."""
    ps = power_sum_from_spec(spec)
    if ps is None:
        raise RecurrenceError("spec carries no power_sum")
    terms = generate_terms(spec, n_max)
    return all(terms[n] == ps.term(n) for n in range(n_max + 1))


# eta expansion and the structure checker ----------------------------------------

@dataclass(frozen=True)
class EtaExpansion:
    ell: int
    etas: tuple  # descending: etas[0] = η_ℓ, etas[1] = η_{ℓ-1}, ...

    def eta(self, index: int) -> Fraction:
        pos = self.ell - index
        if 0 <= pos < len(self.etas):
            return self.etas[pos]
        return Fraction(0)


def expand_power_sum_term(a1: Poly, alpha1: Poly, n: int) -> EtaExpansion:
    if a1.is_zero() or alpha1.is_zero():
        raise RecurrenceError("a_1 and α_1 must be nonzero")
    if n < 1:
        raise RecurrenceError("n must be at least 1")
    ell = n * alpha1.degree + a1.degree
    prod = a1 * alpha1 ** n
    if prod.degree != ell:
        raise AssertionError("degree of a_1 α_1^n disagrees with n deg α_1 + deg a_1")
    return EtaExpansion(ell, tuple(prod.coeff(k) for k in range(ell, -1, -1)))


@dataclass(frozen=True)
class StructureReport:
    dominant_root_ok: bool
    coeff_degree_ok: bool
    excluded_binary_form_ok: bool
    eta_vanishing_ok: bool
    ell: int
    eta_top3: tuple
    details: tuple = ()

    @property
    def ok(self) -> bool:
        return (self.dominant_root_ok and self.coeff_degree_ok
                and self.excluded_binary_form_ok and self.eta_vanishing_ok)


def _is_linear_power(p: Poly) -> bool:
    """p = c·(x + s)^k for some k >= 1 (no additive constant)."""
    if p.degree == NEG_INF or p.degree < 1:
        return False
    if p.degree == 1:
        return True
    tag = cyclic_witness(p)
    return tag is not None and tag.l1.coeff(0) == 0


def check_desired_structure(ps: PowerSumForm, n: int) -> StructureReport:
    """Evaluate assumptions (i), (ii), (iv) exactly and (iii) where decidable.

    (iii) is only decided for d = 2 with a constant second root; for other
    shapes it is reported as not applicable and counted as satisfied.
    """
    if n < 3:
        raise RecurrenceError("the structure conditions are stated for n >= 3")
    (a1, al1), rest = ps.pairs[0], ps.pairs[1:]
    details = []

    sub_root_deg = max((_deg(al) for _, al in rest), default=NEG_INF)
    constant_roots = sum(1 for _, al in ps.pairs if al.is_constant())
    dominant = al1.degree > sub_root_deg and constant_roots <= 1
    if al1.degree <= sub_root_deg:
        details.append(f"(i) deg α_1 = {al1.degree} is not above max sub-dominant degree {sub_root_deg}")
    if constant_roots > 1:
        details.append(f"(i) {constant_roots} constant characteristic roots (at most one allowed)")

    sub_coeff_deg = max((_deg(a) for a, _ in rest), default=NEG_INF)
    coeff_ok = a1.degree >= sub_coeff_deg
    if not coeff_ok:
        details.append(f"(ii) deg a_1 = {a1.degree} is below max sub-dominant coefficient degree {sub_coeff_deg}")

    if ps.d == 2 and rest[0][1].is_constant():
        a2 = rest[0][0]
        excluded = a1.is_constant() and a2.is_constant() and _is_linear_power(al1)
        if excluded:
            details.append("(iii) U_n has the excluded shape a·L(x)^(kn) + b·c^n with L linear")
    else:
        excluded = False
        details.append("(iii) not applicable by shape (decided only for d = 2 with constant α_2)")

    exp = expand_power_sum_term(a1, al1, n)
    top3 = (exp.eta(exp.ell), exp.eta(exp.ell - 1), exp.eta(exp.ell - 2))
    eta_ok = top3[1] == 0 and top3[2] == 0
    if not eta_ok:
        details.append(f"(iv) η_(ℓ-1) = {top3[1]}, η_(ℓ-2) = {top3[2]}; both must vanish")

    return StructureReport(dominant, coeff_ok, not excluded, eta_ok, exp.ell, top3, tuple(details))


# third-order symbolic data --------------------------------------------------------

@dataclass(frozen=True)
class CubicData:
    p: Poly
    q: Poly
    disc: Poly  # (q/2)^2 - (p/3)^3
    degree_report: dict


def _require_order(spec: RecurrenceSpec, order: int):
    if spec.order != order:
        raise RecurrenceError(f"expected an order-{order} recurrence, got order {spec.order}")


def theorem2_hypotheses(deg_a, deg_b, deg_c) -> dict:
    return {
        "3deg_a>deg_c": 3 * deg_a > deg_c,
        "2deg_a>deg_b": 2 * deg_a > deg_b,
        "deg_a+deg_c>2deg_b": deg_a + deg_c > 2 * deg_b,
    }


def cubic_symbolic_data(spec: RecurrenceSpec) -> CubicData:
    _require_order(spec, 3)
    a, b, c = spec.coeffs
    third = Fraction(1, 3)
    p = (a * a).scale(third) + b
    q = (a ** 3).scale(Fraction(2, 27)) + (a * b).scale(third) + c
    disc = (q * q).scale(Fraction(1, 4)) - (p ** 3).scale(Fraction(1, 27))
    hyp = theorem2_hypotheses(a.degree, b.degree, c.degree)
    expected_q = 3 * a.degree
    expected_d = 3 * a.degree + c.degree
    report = {
        "deg_q": q.degree,
        "deg_D": disc.degree,
        "expected_deg_q": expected_q,
        "expected_deg_D": expected_d,
        "deg_q_matches": q.degree == expected_q,
        "deg_D_matches": disc.degree == expected_d,
        "hypotheses": hyp,
        "leading_cancellation": all(hyp.values()) and not (
            q.degree == expected_q and disc.degree == expected_d),
    }
    return CubicData(p, q, disc, report)


# numeric channel -------------------------------------------------------------------

def default_sample_points(seed: int = 0, count: int = 5) -> list:
    """Deterministic complex samples with 0.5 <= |x0| <= 4."""
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        r = rng.uniform(0.5, MAX_SAMPLE_MODULUS)
        t = rng.uniform(0, 2 * math.pi)
        pts.append(complex(round(r * math.cos(t), 6), round(r * math.sin(t), 6)))
    return pts


@dataclass(frozen=True)
class CubicRootData:
    sample_point: complex
    lambdas: tuple
    ws: tuple
    residuals: tuple  # characteristic polynomial, relative
    vieta: dict
    delta: complex
    delta_formula_residual: float


def _cbrt(z: complex) -> complex:
    if z == 0:
        return 0j
    return cmath.exp(cmath.log(z) / 3)


def _rel(err: float, scale: float) -> float:
    return err / (1.0 + scale)


def cardano_at(spec: RecurrenceSpec, x0: complex, data: Optional[CubicData] = None,
               degenerate_eps: float = 1e-9) -> Optional[CubicRootData]:
    """Roots, Binet weights and residuals at one sample point, or None if degenerate."""
    data = data or cubic_symbolic_data(spec)
    a0, b0, c0 = (eval_numeric(c, x0) for c in spec.coeffs)
    p0, q0, D0 = (eval_numeric(poly, x0) for poly in (data.p, data.q, data.disc))
    scale = 1.0 + abs(q0 / 2) ** 2 + abs(p0 / 3) ** 3
    if abs(D0) <= degenerate_eps * scale:
        return None
    sqrt_d = cmath.sqrt(D0)
    if abs(q0 / 2 + sqrt_d) < abs(q0 / 2 - sqrt_d):
        sqrt_d = -sqrt_d
    u = _cbrt(q0 / 2 + sqrt_d)
    if u == 0:
        return None
    v = p0 / (3 * u)  # pairs the cube roots so that u v = p/3
    i_sqrt3 = 1j * math.sqrt(3)
    l1 = u + v + a0 / 3
    l2 = -(u + v) / 2 + i_sqrt3 * (u - v) / 2 + a0 / 3
    l3 = -(u + v) / 2 - i_sqrt3 * (u - v) / 2 + a0 / 3
    lam = (l1, l2, l3)

    delta = l1 * l2 * (l2 - l1) + l1 * l3 * (l1 - l3) + l2 * l3 * (l3 - l2)
    delta_closed = -6 * i_sqrt3 * sqrt_d
    delta_res = _rel(abs(delta - delta_closed), abs(delta_closed))
    if abs(delta) <= degenerate_eps * (1 + max(abs(z) for z in lam) ** 3):
        return None

    W0, W1, W2 = (eval_numeric(w, x0) for w in spec.initial)
    ell = (
        W2 * (l3 - l2) + W1 * (l2 ** 2 - l3 ** 2) + W0 * l2 * l3 * (l3 - l2),
        W2 * (l1 - l3) + W1 * (l3 ** 2 - l1 ** 2) + W0 * l1 * l3 * (l1 - l3),
        W2 * (l2 - l1) + W1 * (l1 ** 2 - l2 ** 2) + W0 * l1 * l2 * (l2 - l1),
    )
    ws = tuple(e / delta for e in ell)

    res = []
    for z in lam:
        val = z ** 3 - a0 * z ** 2 - b0 * z - c0
        res.append(_rel(abs(val), max(abs(z) ** 3, abs(a0 * z * z), abs(b0 * z), abs(c0))))
    e1 = l1 + l2 + l3
    e2 = l1 * l2 + l1 * l3 + l2 * l3
    e3 = l1 * l2 * l3
    vieta = {
        "e1": _rel(abs(e1 - a0), abs(a0)),
        "e2": _rel(abs(e2 + b0), abs(b0)),
        "e3": _rel(abs(e3 - c0), abs(c0)),
        "e3_negative_sign": _rel(abs(e3 + c0), abs(c0)),
    }
    return CubicRootData(x0, lam, ws, tuple(res), vieta, delta, delta_res)


def cardano_verify(spec: RecurrenceSpec, sample_points: Sequence[complex], tol: float = DEFAULT_TOL) -> list:
    """Cardano data at each non-degenerate sample point (degenerate ones dropped)."""
    _require_order(spec, 3)
    data = cubic_symbolic_data(spec)
    out = []
    for x0 in sample_points:
        if abs(x0) > MAX_SAMPLE_MODULUS + 1e-12:
            raise RecurrenceError(f"sample point {x0} exceeds |x0| <= {MAX_SAMPLE_MODULUS}")
        rec = cardano_at(spec, complex(x0), data)
        if rec is not None:
            out.append(rec)
    if not out:
        raise RecurrenceError("no valid sample points")
    return out


def cardano_passes(rec: CubicRootData, tol: float = DEFAULT_TOL) -> bool:
    return max(rec.residuals) <= tol and all(
        rec.vieta[k] <= tol for k in ("e1", "e2", "e3"))


@dataclass(frozen=True)
class BinetReport:
    order: int
    n_check: int
    samples: tuple  # per sample: (x0, max relative deviation)
    max_deviation: float
    tol: float
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return self.max_deviation <= self.tol


def _binary_roots(spec: RecurrenceSpec, x0: complex, eps: float = 1e-9):
    A1, A0 = (eval_numeric(c, x0) for c in spec.coeffs)
    u0, u1 = (eval_numeric(w, x0) for w in spec.initial)
    disc = A1 * A1 + 4 * A0
    if abs(disc) <= eps * (1 + abs(A1) ** 2):
        return None
    root = cmath.sqrt(disc)
    al1 = (A1 - root) / 2
    al2 = (A1 + root) / 2
    s1 = (u1 - u0 * al2) / (al1 - al2)
    s2 = (u0 * al1 - u1) / (al1 - al2)
    return (al1, al2), (s1, s2)


def binet_verify(spec: RecurrenceSpec, n_check: int, sample_points: Sequence[complex],
                 tol: float = DEFAULT_TOL) -> BinetReport:
    """Compare exact terms at each sample with the numeric power sum."""
    if spec.order not in (2, 3):
        raise RecurrenceError("Binet verification is implemented for orders 2 and 3")
    if n_check < spec.order:
        raise RecurrenceError("n_check must be at least the order")
    terms = generate_terms(spec, n_check)
    data = cubic_symbolic_data(spec) if spec.order == 3 else None
    rows = []
    skipped = 0
    for x0 in sample_points:
        x0 = complex(x0)
        if spec.order == 3:
            rec = cardano_at(spec, x0, data)
            if rec is None:
                skipped += 1
                continue
            roots, weights = rec.lambdas, rec.ws
        else:
            got = _binary_roots(spec, x0)
            if got is None:
                skipped += 1
                continue
            roots, weights = got
        worst = 0.0
        for n, Wn in enumerate(terms):
            exact = eval_numeric(Wn, x0)
            approx = sum(w * r ** n for w, r in zip(weights, roots))
            worst = max(worst, _rel(abs(exact - approx), abs(exact)))
        rows.append((x0, worst))
    if not rows:
        raise RecurrenceError("degenerate discriminant at all sample points")
    return BinetReport(spec.order, n_check, tuple(rows), max(w for _, w in rows), tol, skipped)


# the w-bracket ----------------------------------------------------------------------

def bracket_polynomial(spec: RecurrenceSpec) -> Poly:
    """Symmetric bracket B with ℓ_1 ℓ_2 ℓ_3 = -Δ·B, as a polynomial in x.

    Obtained by reducing the product of the three brackets with
    e_1 = a, e_2 = -b, e_3 = c (roots of T^3 - aT^2 - bT - c).
    """
    _require_order(spec, 3)
    a, b, c = spec.coeffs
    W0, W1, W2 = spec.initial
    return (W2 ** 3
            - (a * W1 * W2 ** 2).scale(2)
            - b * W0 * W2 ** 2
            + (a * a - b) * W1 ** 2 * W2
            + (a * b - c.scale(3)) * W0 * W1 * W2
            + a * c * W0 ** 2 * W2
            + (a * b + c) * W1 ** 3
            + (b * b + a * c) * W0 * W1 ** 2
            + (b * c * W0 ** 2 * W1).scale(2)
            + c * c * W0 ** 3)


def reference_bracket_polynomial(spec: RecurrenceSpec) -> Poly:
    """The bracket in its commonly quoted form; it differs from the exact one and is kept for comparison."""
    _require_order(spec, 3)
    a, b, c = spec.coeffs
    W0, W1, W2 = spec.initial
    return (W2 ** 3
            + (a * W1 * W2 ** 2).scale(2)
            + b * W0 * W2 ** 2
            + (a * a + b) * W1 ** 2 * W2
            + (a * b + c.scale(3)) * W0 * W1 * W2
            + a * c * W0 ** 2 * W2
            + (a * b - c) * W1 ** 3
            + (b * b + a * c) * W1 ** 2 * W0
            + (b * c * W0 ** 2 * W1).scale(2)
            + c * W0 ** 3)


@dataclass(frozen=True)
class WFormulaRecord:
    bracket: Poly
    bracket_degree: object
    reference_bracket: Poly
    reference_matches: bool
    numeric_checks: tuple = field(default=())  # (x0, rel residual exact, rel residual reference)


def _numeric_bracket_check(spec: RecurrenceSpec, x0: complex, B: Poly, P: Poly):
    rec = cardano_at(spec, x0)
    if rec is None:
        return None
    l1, l2, l3 = rec.lambdas
    W0, W1, W2 = (eval_numeric(w, x0) for w in spec.initial)
    ells = [
        (l3 - l2) * (W2 - W1 * (l3 + l2) + W0 * l3 * l2),
        (l1 - l3) * (W2 - W1 * (l1 + l3) + W0 * l1 * l3),
        (l2 - l1) * (W2 - W1 * (l2 + l1) + W0 * l2 * l1),
    ]
    prod = ells[0] * ells[1] * ells[2]
    derived = -rec.delta * eval_numeric(B, x0)
    reference = -rec.delta * eval_numeric(P, x0)
    return (x0, _rel(abs(prod - derived), abs(prod)), _rel(abs(prod - reference), abs(prod)))


def build_w_formulas(spec: RecurrenceSpec, sample_points: Sequence[complex] = ()) -> WFormulaRecord:
    B = bracket_polynomial(spec)
    P = reference_bracket_polynomial(spec)
    checks = []
    for x0 in sample_points:
        row = _numeric_bracket_check(spec, complex(x0), B, P)
        if row is not None:
            checks.append(row)
    return WFormulaRecord(B, B.degree, P, B == P, tuple(checks))
