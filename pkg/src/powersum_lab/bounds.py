"""Explicit constant chains of the degree bounds for decomposable terms.

Everything is evaluated in exact rational arithmetic from degree data; the
reports keep every intermediate constant so each inequality can be replayed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .algebra import NEG_INF
from .polyio import RecurrenceSpec
from .recurrence import bracket_polynomial, cubic_symbolic_data, theorem2_hypotheses

THREE_POW_9 = 3 ** 9

CAVEATS_T2 = (
    "C6 is defined twice in the source chain; C6_bm = 10(6C2 + C5) feeds the height bound of p1, "
    "C6_root = (2/3)(deg q + deg D/2) + deg a feeds the root heights",
    "the lower bound for H(q1) is computed from H(mu1/mu2) although q1 = mu1/mu3; chain kept as stated",
    "C3 fixed as deg B + deg D/2 with B the exact bracket polynomial",
    "valuation hypotheses on u, v, mu_i are not decidable here and are assumed",
)


class BoundsError(ValueError):
    pass


def _nonneg(*values):
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise BoundsError("degrees and sizes must be nonnegative integers")


def brownawell_masser_bound(n: int, s_size: int, genus: int) -> int:
    """C(n, 2) · (|S| + max(0, 2g - 2))."""
    if not isinstance(n, int) or n < 1:
        raise BoundsError("n must be a positive integer")
    _nonneg(s_size, genus)
    return comb(n, 2) * (s_size + max(0, 2 * genus - 2))


def castelnuovo_bound(k1: int, g1: int, k2: int, g2: int) -> int:
    if k1 < 1 or k2 < 1:
        raise BoundsError("field degrees k1, k2 must be positive")
    _nonneg(g1, g2)
    return k1 * g1 + k2 * g2 + (k1 - 1) * (k2 - 1)


def riemann_bound(d1: int, d2: int) -> int:
    if d1 < 1 or d2 < 1:
        raise BoundsError("field degrees must be positive")
    return (d1 - 1) * (d2 - 1)


@dataclass(frozen=True)
class NLemmaFacts:
    d_max: int
    genus_max: int
    d_min_for_lower_bound: int


def nlemma_degree_facts(deg_h: int) -> NLemmaFacts:
    if not isinstance(deg_h, int) or deg_h < 2:
        raise BoundsError("deg h must be at least 2")
    d_max = deg_h - 1
    return NLemmaFacts(d_max, (d_max - 1) * (d_max - 2) // 2, -(-deg_h // 2))


# cubic recurrence chain C1..C12 ------------------------------------------------

@dataclass(frozen=True)
class BoundReportT2:
    inputs: dict
    constants: dict  # name -> Fraction, in chain order
    genus_bound_coeff: Fraction
    S_bound_coeff: Fraction
    p1_height_coeff: Fraction
    final_degree_bound: Optional[Fraction]
    hypothesis_flags: dict
    valid: bool
    reason: str = ""
    caveats: tuple = field(default=CAVEATS_T2)

    def __getitem__(self, name):
        return self.constants[name]


def theorem2_from_degrees(deg_a: int, deg_b: int, deg_c: int, deg_w=(0, 0, 0), deg_B: int = 0,
                          deg_q: Optional[int] = None, deg_D: Optional[int] = None) -> BoundReportT2:
    """Evaluate C1..C12 from degree data.

    ``deg_q`` and ``deg_D`` default to 3 deg a and 3 deg a + deg c, which
    hold under the degree hypotheses.
    """
    _nonneg(deg_a, deg_b, deg_c, deg_B, *deg_w)
    if deg_q is None:
        deg_q = 3 * deg_a
    if deg_D is None:
        deg_D = 3 * deg_a + deg_c
    _nonneg(deg_q, deg_D)
    F = Fraction
    half_D = F(deg_D, 2)
    w_sum = sum(deg_w)

    C = {}
    C["C1"] = F(deg_D)
    C["C2"] = 2 * THREE_POW_9 * (C["C1"] + 1) + 3
    C["C3"] = F(deg_B) + half_D
    C["C4"] = C["C3"] + half_D
    C["C5"] = 18 * deg_c + 18 * C["C4"] + 9
    C["C6_bm"] = 10 * (6 * C["C2"] + C["C5"])
    C["C6_root"] = F(2, 3) * (deg_q + half_D) + deg_a
    C["C7"] = 4 * (deg_q + half_D) + deg_a
    C["C8"] = 12 * C["C7"] + w_sum + half_D
    C["C9"] = 3 * C["C6_root"] + 3 * C["C7"] + w_sum + half_D
    C["C10"] = 3 * C["C6_root"] + 9 * C["C7"] + 2 * w_sum
    C["C11"] = F(2, 3) * deg_q - F(1, 3) * deg_D + 2 * deg_a

    hyp = theorem2_hypotheses(deg_a, deg_b, deg_c)
    valid, reason = all(hyp.values()), ""
    if not valid:
        reason = "degree hypotheses violated: " + ", ".join(k for k, v in hyp.items() if not v)
    final = None
    if C["C11"] <= 0:
        valid = False
        reason = (reason + "; " if reason else "") + "lower bound for H(q1) degenerates (C11 <= 0)"
    else:
        C["C12"] = ((C["C6_bm"] + 18 * C["C10"])
                    * (9 * C["C8"] + 18 * C["C9"] + 9 * C["C6_root"] + 18 * C["C7"])
                    / (9 * C["C11"]))
        final = 2 * C["C12"]

    inputs = {"deg_a": deg_a, "deg_b": deg_b, "deg_c": deg_c,
              "deg_W0": deg_w[0], "deg_W1": deg_w[1], "deg_W2": deg_w[2],
              "deg_B": deg_B, "deg_q": deg_q, "deg_D": deg_D}
    return BoundReportT2(inputs, C, 3 * C["C2"], C["C5"], C["C6_bm"], final, hyp, valid, reason)


def _degree_or_reject(p, name: str) -> int:
    if p.degree == NEG_INF:
        raise BoundsError(f"{name} is the zero polynomial; its degree would poison the chain")
    return p.degree


def theorem2_bound(spec: RecurrenceSpec) -> BoundReportT2:
    """Constant chain for an order-3 spec; deg q, deg D and deg B are exact."""
    if spec.order != 3:
        raise BoundsError(f"the cubic bound needs an order-3 recurrence, got order {spec.order}")
    a, b, c = spec.coeffs
    names = ("a", "b", "c")
    degs = [_degree_or_reject(p, nm) for p, nm in zip((a, b, c), names)]
    dw = tuple(max(0, w.degree) if w.degree != NEG_INF else 0 for w in spec.initial)
    data = cubic_symbolic_data(spec)
    B = bracket_polynomial(spec)
    if data.q.degree == NEG_INF or data.disc.degree == NEG_INF:
        raise BoundsError("q or D vanishes identically; the recurrence is degenerate")
    deg_B = B.degree if B.degree != NEG_INF else 0
    return theorem2_from_degrees(*degs, deg_w=dw, deg_B=deg_B,
                                 deg_q=data.q.degree, deg_D=data.disc.degree)


# binary recurrence constant ----------------------------------------------------

@dataclass(frozen=True)
class BoundReportT3:
    inputs: dict
    C13: int
    C14: int
    C: int
    degenerate: bool


def theorem3_from_degrees(deg_A1: int, deg_A0: int, deg_u0: int, deg_u1: int) -> BoundReportT3:
    _nonneg(deg_A1, deg_A0, deg_u0, deg_u1)
    c13 = max(deg_A0, 2 * deg_A1)
    c14 = max(2 * deg_u1, deg_u0 + deg_u1 + deg_A1, 2 * deg_u0 + deg_A0)
    total = 32 * (2 * (deg_A0 + deg_u0 + deg_u1) + 7 * c13 + 2 * c14 + 1) * (deg_u0 + deg_u1 + 6 * c13)
    inputs = {"deg_A1": deg_A1, "deg_A0": deg_A0, "deg_u0": deg_u0, "deg_u1": deg_u1}
    return BoundReportT3(inputs, c13, c14, total, total == 0)


def theorem3_bound(spec: RecurrenceSpec) -> BoundReportT3:
    if spec.order != 2:
        raise BoundsError(f"the binary bound needs an order-2 recurrence, got order {spec.order}")
    A1, A0 = spec.coeffs
    u0, u1 = spec.initial
    return theorem3_from_degrees(_degree_or_reject(A1, "A1"), _degree_or_reject(A0, "A0"),
                                 _degree_or_reject(u0, "u0"), _degree_or_reject(u1, "u1"))
