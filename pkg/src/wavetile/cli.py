"""``wavetile`` command line.

Exit codes: 0 when the property holds or the construction succeeds, 1 when a
property fails (the report carries witnesses), 2 for input/usage errors.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal
from fractions import Fraction

from . import dar, extraction, formats, matching, measures, tiling, wavelet
from .errors import (
    FormatError, NoDiagonal, NotDoublyStochastic, PartialCongruence, RaggedComplex, Undercovered,
    WavetileError,
)
from .exact import format_rational, parse_quad, parse_rational
from .fixtures import FIXTURE_NAMES, load_fixture
from .intervals import IntervalSet
from .stepfunc import StepFunction
from .wavelet import ComplexProfile

OK, FAIL, INPUT_ERROR = 0, 1, 2


# --------------------------------------------------------------------------
# input coercion


def _load(args):
    if (args.input is None) == (args.example is None):
        raise FormatError("give exactly one of --input FILE or --example NAME")
    if args.example is not None:
        return load_fixture(args.example)
    return formats.load(args.input)


def _as_set(obj) -> IntervalSet:
    if isinstance(obj, IntervalSet):
        return obj
    if isinstance(obj, StepFunction):
        return obj.support()
    raise FormatError(f"expected an interval set, got {type(obj).__name__}")


def _as_function(obj) -> StepFunction:
    if isinstance(obj, StepFunction):
        return obj
    if isinstance(obj, IntervalSet):
        return StepFunction.indicator(obj)
    raise FormatError(f"expected a step function, got {type(obj).__name__}")


def _as_profile(obj) -> ComplexProfile:
    if isinstance(obj, ComplexProfile):
        return obj
    if isinstance(obj, IntervalSet):
        return ComplexProfile.indicator(obj)
    if isinstance(obj, StepFunction):
        return ComplexProfile((lo, hi, v, 0) for lo, hi, v in obj.cells())
    raise FormatError(f"expected a complex profile, got {type(obj).__name__}")


def _as_points(obj) -> list:
    if isinstance(obj, list) and all(isinstance(x, Fraction) for x in obj):
        return obj
    raise FormatError("expected a list of rational points")


def _as_matrix(obj):
    if isinstance(obj, list) and obj and isinstance(obj[0], list):
        return obj
    if isinstance(obj, StepFunction):
        return dar.build_cell_matrix(obj).entries
    raise FormatError("expected a matrix")


# --------------------------------------------------------------------------
# commands; each returns (exit code, report dict)


def cmd_verify_set(args, obj):
    e = _as_set(obj)
    verdict = tiling.is_wavelet_set(e)
    report = verdict.to_dict()
    report["lebesgue"] = format_rational(e.lebesgue())
    report["nu"] = e.nu().to_dict() if not e.touches_origin() else {"kind": "infinite"}
    return (OK if verdict else FAIL), report


def cmd_verify_function(args, obj):
    f = _as_function(obj)
    trans = tiling.periodize_translation(f)
    t_verdict, t_wit = tiling.classify(trans, tiling.UNIT)
    report = {"translation": _verdict_dict(t_verdict, t_wit, trans)}
    ok = t_verdict == "tiles"
    try:
        dil = tiling.periodize_dilation(f)
        d_verdict, d_wit = tiling.classify(dil, tiling.W)
        report["dilation"] = _verdict_dict(d_verdict, d_wit, dil)
        ok = ok and d_verdict == "tiles"
    except WavetileError as exc:
        report["dilation"] = {"error": str(exc)}
        ok = False
    report["both_identically_one"] = ok
    return (OK if ok else FAIL), report


def _verdict_dict(verdict, witnesses, mult):
    return {"verdict": verdict, "periodization": mult.to_dict(),
            "witnesses": [{"lo": format_rational(lo), "hi": format_rational(hi), "value": format_rational(v)}
                          for lo, hi, v in witnesses]}


def cmd_certify(args, obj):
    cert = wavelet.certify_wavelet(_as_profile(obj), window_J=args.window, q=args.q)
    return (OK if cert.is_wavelet else FAIL), cert.to_dict()


def cmd_geom(args, obj):
    rep = wavelet.geom_support_check(_as_set(obj), window_J=args.window)
    return (OK if rep.ok else FAIL), rep.to_dict()


def cmd_extract(args, obj):
    e = _as_set(obj)
    action = tiling.normalize_action(args.action)
    try:
        if action == tiling.TRANSLATION:
            g = extraction.greedy_translation_subset(e)
        else:
            g = extraction.greedy_dilation_subset(e)
    except Undercovered as exc:
        lo, hi, v = exc.witness
        return FAIL, {"error": str(exc), "witness": {"lo": format_rational(lo), "hi": format_rational(hi),
                                                    "multiplicity": format_rational(v)}}
    return OK, {"action": action, "subset": g.to_dict(),
                "verdict": tiling.tiling_verdict(g, action).to_dict()}


def cmd_speegle(args, obj):
    check = extraction.check_speegle_conditions(_as_points(obj))
    return (OK if check else FAIL), check.to_dict()


def _triple(args, obj):
    pts = _as_points(obj)
    if args.eps is not None:
        eps = parse_rational(args.eps)
    else:
        check = extraction.check_speegle_conditions(pts)
        if not check:
            raise FormatError("X fails the point conditions: " + "; ".join(check.reasons))
        eps = check.delta / 2
    return extraction.build_U_V(pts, eps)


def cmd_build_uv(args, obj):
    triple = _triple(args, obj)
    ip = extraction.check_ip_conditions(triple.f, triple.u, triple.v)
    report = triple.to_dict()
    report["conditions"] = ip.to_dict()
    return (OK if ip.all_hold else FAIL), report


def cmd_ip_check(args, obj):
    if isinstance(obj, dict):
        f, u, v = obj["F"], obj["U"], obj["V"]
    else:
        t = _triple(args, obj)
        f, u, v = t.f, t.u, t.v
    ip = extraction.check_ip_conditions(f, u, v)
    return (OK if ip.all_hold else FAIL), ip.to_dict()


def cmd_diagonal(args, obj):
    a = _as_matrix(obj)
    ok, witness = matching.is_doubly_stochastic(a)
    report = {"matrix": matching.matrix_to_json(a), "doubly_stochastic": ok,
              "witness": None if witness is None else {**witness, "sum": format_rational(witness["sum"])}}
    try:
        report["diagonal"] = matching.positive_diagonal(a).to_dict()
    except NoDiagonal as exc:
        report["diagonal"] = None
        report["error"] = str(exc)
        return FAIL, report
    if len(a) <= matching.BRUTE_FORCE_LIMIT:
        report["all_diagonals"] = [d.to_dict()["sigma"] for d in matching.brute_force_diagonals(a)]
    return OK, report


def cmd_dar_select(args, obj):
    f = _as_function(obj)
    extra = dar.refine_breakpoints(f, *args.refine) if args.refine else ()
    try:
        sel = dar.dar_select(f, extra)
    except NotDoublyStochastic as exc:
        w = exc.witness
        return FAIL, {"error": str(exc), "witness": {**w, "sum": format_rational(w["sum"])}}
    except (PartialCongruence, RaggedComplex) as exc:
        return FAIL, {"error": f"{type(exc).__name__}: {exc}",
                      "hint": "retry with --refine K J to split cells at orbit images of breakpoints"}
    return (OK if sel.verified else FAIL), sel.to_dict()


def cmd_orbit(args, obj):
    res = dar.orbit_explore(_as_function(obj), parse_quad(args.xi), args.window)
    ok = res.complete_sums_are_one and res.uniqueness_holds and res.diagonal is not None
    return (OK if ok else FAIL), res.to_dict()


def cmd_measure_match(args, obj):
    res = measures.measure_match(_as_function(obj), Decimal(args.tol))
    return OK, res.to_dict()


def cmd_dimension(args, obj):
    res = wavelet.compute_dimension_function(_as_profile(obj), window_J=args.window)
    report = res.to_dict()
    values = sorted({v for _, _, v in res.function.cells_on(res.domain)})
    report["values"] = [format_rational(v) for v in values]
    report["identically_one"] = values == [1]
    return OK, report


COMMANDS = {
    "verify-set": (cmd_verify_set, "both tilings for an interval set"),
    "verify-function": (cmd_verify_function, "translation/dilation periodizations of a step function"),
    "certify-wavelet": (cmd_certify, "wavelet equations for a complex step profile"),
    "geom-check": (cmd_geom, "necessary companion-pair geometry of a support"),
    "extract": (cmd_extract, "greedy tiling subset"),
    "speegle-check": (cmd_speegle, "point conditions and certified radius"),
    "build-uv": (cmd_build_uv, "F, U, V witnesses for a point set"),
    "ip-check": (cmd_ip_check, "four subset-of-wavelet-set conditions"),
    "diagonal": (cmd_diagonal, "positive diagonal of a matrix"),
    "dar-select": (cmd_dar_select, "cell-level simultaneous tiling selection"),
    "orbit": (cmd_orbit, "exact single-orbit matrix"),
    "measure-match": (cmd_measure_match, "set with prescribed m and nu"),
    "dimension": (cmd_dimension, "dimension function"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wavetile", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", metavar="FILE")
        p.add_argument("--example", metavar="NAME", help=", ".join(FIXTURE_NAMES))
        p.add_argument("--report", choices=("json", "text"), default="json")
        if name in ("certify-wavelet", "geom-check", "dimension"):
            p.add_argument("--window", type=int, default=20)
        if name == "certify-wavelet":
            p.add_argument("--q", type=int, default=1)
        if name == "extract":
            p.add_argument("--action", default="trans", choices=("trans", "dil", "translation", "dilation"))
        if name in ("build-uv", "ip-check"):
            p.add_argument("--eps")
        if name == "dar-select":
            p.add_argument("--refine", nargs=2, type=int, metavar=("K", "J"))
        if name == "orbit":
            p.add_argument("--xi", required=True)
            p.add_argument("--window", type=int, default=4)
        if name == "measure-match":
            p.add_argument("--tol", default="1e-9")
    return parser


def render_text(report, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            if set(value) == {"intervals"}:
                body = " ∪ ".join(f"({d['lo']}, {d['hi']}]" for d in value["intervals"]) or "∅"
                lines.append(f"{pad}{key}: {body}")
            else:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and len(value) > 12:
            lines.append(f"{pad}{key}: [{len(value)} items]")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(line for line in lines if line)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    handler = COMMANDS[args.command][0]
    try:
        code, report = handler(args, _load(args))
    except (WavetileError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INPUT_ERROR
    report = {"command": args.command, "exit_code": code, **report}
    out.write((formats.dumps(report) if args.report == "json" else render_text(report)) + "\n")
    return code


def main():  # pragma: no cover
    sys.exit(run())
