"""Command-line front end.

Every subcommand prints one report (JSON by default) and exits with
0 on success, 1 when a checked statement turns out false, 2 on bad input
and 3 when an internal invariant breaks.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds as _bounds
from . import chebdickson as cd
from .algebra import NEG_INF, Poly, RatFunc, as_rational
from .decompose import classify_shape, decompose_step, full_decomposition, solve_outer
from .polyio import load_spec, parse_poly, parse_ratfunc, print_poly, print_ratfunc
from .recurrence import (
    DEFAULT_TOL,
    binet_verify,
    build_w_formulas,
    cardano_passes,
    cardano_verify,
    check_desired_structure,
    check_power_sum_consistency,
    default_sample_points,
    generate_terms,
    power_sum_from_spec,
)
from .standard_pairs import KINDS, PairRestrictionError, make_standard_pair, verify_bilu_tichy_shape
from .valuation import (
    INFINITE_HEIGHT,
    Place,
    check_sum_formula,
    height,
    height_by_places,
    valuation,
    valuation_table,
)

SCHEMA = "powersum-lab/1"
EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
NONE_OVER_Q = "none over Q (decomposability over C is not excluded)"
DICKSON_PARAMS = (1, -1, 2, -2, Fraction(3, 2))


class InputError(ValueError):
    pass


def to_jsonable(obj):
    """Exact values become strings; floats stay floats; containers recurse."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Poly):
        return print_poly(obj)
    if isinstance(obj, RatFunc):
        return print_ratfunc(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if obj is NEG_INF:
        return "-inf"
    if obj is INFINITE_HEIGHT:
        return "inf"
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _need(value, flag: str):
    if value is None:
        raise InputError(f"{flag} is required for this subcommand")
    return value


def _poly_arg(text, flag: str) -> Poly:
    return parse_poly(_need(text, flag))


def _ratfunc_arg(args) -> RatFunc:
    return parse_ratfunc(_need(args.poly, "--poly"), args.den)


def _spec_arg(args):
    return load_spec(_need(args.spec, "--spec"))


def _samples(args):
    return default_sample_points(args.seed if args.seed is not None else 0, 5)


# subcommands ---------------------------------------------------------------------
# each returns (inputs, results, caveats, verified)

def cmd_terms(args):
    spec = _spec_arg(args)
    n_max = args.max_n if args.max_n is not None else 10
    if n_max < 0:
        raise InputError("--max-n must be nonnegative")
    terms = generate_terms(spec, n_max)
    results = {"terms": terms}
    ok = True
    if spec.power_sum is not None:
        ok = check_power_sum_consistency(spec, n_max)
        results["power_sum_consistent"] = ok
    return {"spec": spec.to_json(), "max_n": n_max}, results, [], ok


def cmd_check_structure(args):
    spec = _spec_arg(args)
    ps = power_sum_from_spec(spec)
    if ps is None:
        raise InputError("check-structure needs a spec with a power_sum field")
    n = args.n if args.n is not None else 3
    rep = check_desired_structure(ps, n)
    consistent = check_power_sum_consistency(spec, max(n, spec.order + 2))
    results = {
        "dominant_root": rep.dominant_root_ok,
        "coeff_degree": rep.coeff_degree_ok,
        "excluded_binary_form_avoided": rep.excluded_binary_form_ok,
        "eta_vanishing": rep.eta_vanishing_ok,
        "ell": rep.ell,
        "eta_top3": rep.eta_top3,
        "details": rep.details,
        "power_sum_consistent": consistent,
        "ok": rep.ok,
    }
    return {"spec": spec.to_json(), "n": n}, results, [], rep.ok and consistent


def cmd_verify_roots(args):
    spec = _spec_arg(args)
    samples = _samples(args)
    n_check = args.max_n if args.max_n is not None else 12
    results = {}
    caveats = []
    if spec.order == 3:
        recs = cardano_verify(spec, samples, args.tol)
        results["cardano"] = [{
            "sample_point": r.sample_point,
            "max_residual": max(r.residuals),
            "vieta": r.vieta,
            "delta_formula_residual": r.delta_formula_residual,
            "passes": cardano_passes(r, args.tol),
        } for r in recs]
        w = build_w_formulas(spec, samples)
        results["bracket"] = {
            "polynomial": w.bracket,
            "degree": w.bracket_degree,
            "reference_matches": w.reference_matches,
            "numeric_checks": [{"sample_point": x0, "exact": d, "reference": p}
                               for x0, d, p in w.numeric_checks],
        }
        caveats.append("vieta e3 checked against +c; e3_negative_sign records the -c convention")
        caveats.append("bracket polynomial derived exactly; reference_matches compares it with the commonly quoted form")
        ok = all(cardano_passes(r, args.tol) for r in recs)
        ok = ok and all(d <= args.tol for _, d, _ in w.numeric_checks)
    elif spec.order == 2:
        ok = True
    else:
        raise InputError(f"verify-roots supports order 2 and 3, got order {spec.order}")
    binet = binet_verify(spec, n_check, samples, args.tol)
    results["binet"] = {"n_check": n_check, "samples": binet.samples,
                        "max_deviation": binet.max_deviation, "skipped": binet.skipped}
    ok = ok and binet.ok
    results["ok"] = ok
    inputs = {"spec": spec.to_json(), "seed": args.seed or 0, "tol": args.tol, "max_n": n_check}
    return inputs, results, caveats, ok


def cmd_decompose(args):
    f = _poly_arg(args.poly, "--poly")
    inputs = {"poly": f}
    caveats = []
    if args.n is not None:
        inputs["right_degree"] = args.n
        found = decompose_step(f, args.n)
        if found is None:
            return inputs, {"found": False}, [NONE_OVER_Q], False
        g, h = found
        return inputs, {"found": True, "outer": g, "inner": h}, caveats, True
    chain = full_decomposition(f)
    if len(chain.factors) == 1:
        caveats.append(NONE_OVER_Q)
    results = {"chain": [list(chain.factors)], "degrees": [p.degree for p in chain.factors],
               "indecomposable": len(chain.factors) == 1, "normalization": chain.normalization}
    return inputs, results, caveats, True


def cmd_classify(args):
    h = _poly_arg(args.poly, "--poly")
    tag = classify_shape(h)
    results = {"tag": tag.tag, "n": tag.n}
    if tag.tag != "neither":
        results.update(l1=tag.l1, l2=tag.l2, verified=tag.reconstruct() == h)
    caveats = [tag.note] if tag.note else []
    if tag.tag == "neither":
        caveats.append("neither over Q")
    return {"poly": h}, results, caveats, True


def cmd_find_outer_q(args):
    U = _poly_arg(args.outer, "--outer")
    V = _poly_arg(args.target, "--target")
    Q = solve_outer(U, V)
    inputs = {"outer": U, "target": V}
    if Q is None:
        return inputs, {"found": False}, [NONE_OVER_Q], False
    return inputs, {"found": True, "inner": Q}, [], True


def _cheb_identities(max_n: int, budget: int) -> list:
    rows = []
    for n in range(max_n + 1):
        rows.append({"identity": "bridge", "n": n, "holds": cd.chebyshev_dickson_bridge(n)})
    for m in range(1, max_n + 1):
        for n in range(1, max_n + 1):
            if m * n <= budget:
                rows.append({"identity": "composition", "m": m, "n": n,
                             "holds": cd.verify_chebyshev_composition(m, n, budget)})
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            for k in (1, 2, 3):
                if (n + m) * k <= budget:
                    rows.append({"identity": "product", "n": n, "m": m, "k": k,
                                 "holds": cd.verify_chebyshev_product(n, m, k, budget)})
    return rows


def _dickson_identities(max_n: int, budget: int) -> list:
    rows = []
    for r in DICKSON_PARAMS:
        for n in range(max_n + 1):
            rows.append({"identity": "recurrence", "n": n, "r": r,
                         "holds": cd.dickson(n, r) == cd.dickson_by_recurrence(n, r)})
            rows.append({"identity": "functional", "n": n, "r": r,
                         "holds": cd.dickson_functional_identity_check(n, r, budget)})
        for k in range(1, max_n + 1):
            for l in range(1, max_n + 1):
                if k * l <= budget:
                    rows.append({"identity": "composition", "k": k, "l": l, "r": r,
                                 "holds": cd.verify_dickson_composition(k, l, r, budget)})
    return rows


def cmd_identities(args):
    max_n = args.max_n if args.max_n is not None else 8
    if max_n < 1:
        raise InputError("--max-n must be at least 1")
    budget = cd.DEFAULT_DEGREE_BUDGET
    rows = []
    if args.family in ("chebyshev", "all"):
        rows += [dict(row, family="chebyshev") for row in _cheb_identities(max_n, budget)]
    if args.family in ("dickson", "all"):
        rows += [dict(row, family="dickson") for row in _dickson_identities(max_n, budget)]
    ok = all(row["holds"] for row in rows)
    failures = [row for row in rows if not row["holds"]]
    results = {"checked": len(rows), "all_hold": ok, "failures": failures}
    inputs = {"family": args.family, "max_n": max_n, "degree_budget": budget}
    return inputs, results, [f"pairs with degree above {budget} are skipped"], ok


def cmd_height(args):
    f = _ratfunc_arg(args)
    if f.is_zero():
        return {"f": f}, {"height": INFINITE_HEIGHT}, ["height of 0 is infinite"], True
    h1, h2 = height(f), height_by_places(f)
    results = {"height": h1, "height_by_places": h2, "routes_agree": h1 == h2}
    if h1 != h2:
        raise AssertionError("height routes disagree")
    return {"f": f}, results, [], True


def _place_arg(text: str) -> Place:
    if text.strip() in ("inf", "infinity"):
        return Place.infinity()
    return Place.finite(parse_poly(text))


def cmd_valuation(args):
    f = _ratfunc_arg(args)
    inputs = {"f": f}
    if args.at is not None:
        place = _place_arg(args.at)
        inputs["at"] = place.label()
        return inputs, {"place": place.label(), "place_status": place.status,
                        "valuation": valuation(f, place)}, [], True
    table = valuation_table(f)
    report = check_sum_formula(f)
    results = {
        "table": [{"place": pl.label(), "degree": pl.degree, "status": pl.status, "valuation": v}
                  for pl, v in table],
        "weighted_sum": report.lhs_sum,
        "sum_formula_holds": report.holds,
    }
    return inputs, results, ["valuations are per complex place over each listed place"], report.holds


def _rational_param(value, name: str):
    if isinstance(value, bool):
        raise InputError(f"params.{name}: expected a number")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return as_rational(Fraction(value))
        except ValueError:
            raise InputError(f"params.{name}: cannot read {value!r} as a rational") from None
    raise InputError(f"params.{name}: expected an integer or a rational string")


WITNESS_KEYS = {"kind", "params", "switched", "f", "g", "phi", "lam", "mu"}


def load_witness(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"$: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise InputError("$: expected a JSON object")
    extra = set(data) - WITNESS_KEYS
    if extra:
        raise InputError(f"$: unknown keys {sorted(extra)}")
    if data.get("kind") not in KINDS:
        raise InputError(f"kind: expected one of {', '.join(KINDS)}")
    params = {}
    for name, value in (data.get("params") or {}).items():
        if name == "p":
            params[name] = parse_poly(value) if isinstance(value, str) else _rational_param(value, name)
        else:
            params[name] = _rational_param(value, name)
    polys = {}
    for key in ("f", "g", "phi", "lam", "mu"):
        if key in data:
            polys[key] = parse_poly(data[key])
    if polys and not {"f", "g"} <= set(polys):
        raise InputError("a shape witness needs both f and g")
    return {"kind": data["kind"], "params": params, "switched": bool(data.get("switched", False)),
            "polys": polys}


def cmd_standard_pair(args):
    w = load_witness(_need(args.spec, "--spec"))
    try:
        pair = make_standard_pair(w["kind"], switched=w["switched"], **w["params"])
    except TypeError as exc:
        raise InputError(f"params: {exc}") from None
    polys = w["polys"]
    x = Poly.x()
    self_check = verify_bilu_tichy_shape(pair.left, pair.right, x, pair, x, x)
    if not self_check:
        raise AssertionError("constructed pair fails its own shape check")
    results = {"kind": pair.kind, "left": pair.left, "right": pair.right, "self_check": self_check}
    ok = True
    if polys:
        phi, lam, mu = polys.get("phi", x), polys.get("lam", x), polys.get("mu", x)
        ok = verify_bilu_tichy_shape(polys["f"], polys["g"], phi, pair, lam, mu)
        results["witness_verified"] = ok
    inputs = {"kind": w["kind"], "params": {**w["params"], "switched": w["switched"]},
              "witness": polys}
    return inputs, results, [], ok


def cmd_bounds(args):
    spec = _spec_arg(args)
    theorem = _need(args.theorem, "--theorem")
    if theorem == 3:
        rep = _bounds.theorem3_bound(spec)
        results = {"C13": rep.C13, "C14": rep.C14, "C": rep.C, "degenerate": rep.degenerate}
        return {"spec": spec.to_json(), "theorem": 3, "degrees": rep.inputs}, results, [], not rep.degenerate
    rep = _bounds.theorem2_bound(spec)
    results = {
        "constants": rep.constants,
        "genus_bound_coeff": rep.genus_bound_coeff,
        "S_bound_coeff": rep.S_bound_coeff,
        "p1_height_coeff": rep.p1_height_coeff,
        "final_degree_bound": rep.final_degree_bound,
        "hypotheses": rep.hypothesis_flags,
        "valid": rep.valid,
        "reason": rep.reason,
    }
    return {"spec": spec.to_json(), "theorem": 2, "degrees": rep.inputs}, results, list(rep.caveats), rep.valid


COMMANDS = {
    "terms": cmd_terms,
    "check-structure": cmd_check_structure,
    "verify-roots": cmd_verify_roots,
    "decompose": cmd_decompose,
    "classify": cmd_classify,
    "find-outer-q": cmd_find_outer_q,
    "identities": cmd_identities,
    "height": cmd_height,
    "valuation": cmd_valuation,
    "standard-pair": cmd_standard_pair,
    "bounds": cmd_bounds,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="JSON spec file (recurrence, or witness for standard-pair)")
    common.add_argument("--poly", help="polynomial in x, e.g. \"x^2 - 3*x + 2\"")
    common.add_argument("--den", help="denominator for height/valuation")
    common.add_argument("--at", help="place for valuation: a polynomial or 'inf'")
    common.add_argument("--outer", help="outer polynomial U for find-outer-q")
    common.add_argument("--target", help="target polynomial V for find-outer-q")
    common.add_argument("--n", type=int)
    common.add_argument("--max-n", type=int, dest="max_n")
    common.add_argument("--theorem", type=int, choices=(2, 3))
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int)
    common.add_argument("--family", choices=("chebyshev", "dickson", "all"), default="all")

    parser = argparse.ArgumentParser(prog="powersum-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _text_lines(obj, prefix: str = "") -> list:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out += _text_lines(v, f"{prefix}{k}." if isinstance(v, (dict, list)) else f"{prefix}{k}")
        return out
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return [f"{prefix.rstrip('.')}: {', '.join(map(str, obj))}"]
        out = []
        for i, v in enumerate(obj):
            out += _text_lines(v, f"{prefix}{i}." if isinstance(v, (dict, list)) else f"{prefix}{i}")
        return out
    return [f"{prefix}: {obj}"]


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False)
    return "\n".join(_text_lines(report))


def run(argv: Optional[Sequence[str]] = None):
    """Parse ``argv``, run the subcommand and return ``(exit_code, output)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_INPUT), ""
    inputs, results, caveats = {}, {}, []
    try:
        inputs, results, caveats, verified = COMMANDS[args.command](args)
        code = EXIT_OK if verified else EXIT_FALSE
    except AssertionError as exc:
        code, results = EXIT_INTERNAL, {"error": f"internal invariant violated: {exc}"}
    except (ValueError, OSError, PairRestrictionError) as exc:
        code, results = EXIT_INPUT, {"error": str(exc)}
    except Exception as exc:  # anything unexpected is an internal failure
        code, results = EXIT_INTERNAL, {"error": f"{type(exc).__name__}: {exc}"}
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "inputs": to_jsonable(inputs),
        "results": to_jsonable(results),
        "caveats": list(caveats),
        "exit_code": code,
    }
    if code >= EXIT_INPUT:
        print(f"powersum-lab {args.command}: {results['error']}", file=sys.stderr)
    return code, render(report, args.format)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, output = run(argv)
    if output:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
