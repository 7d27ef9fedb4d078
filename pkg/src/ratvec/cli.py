"""Command-line front end.

Exit codes: 0 success (or membership), 1 clean non-membership or failed
identity, 2 input error. Scalars written ``p/q`` (or as integers, or as
surd literals like ``(a - b*sqrt(d))/c``) are handled exactly; decimals take
the float path.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import __version__
from .campaign import rows_to_csv, sample_campaign
from .characterization import (BOUNDARY_TOL, Region, is_ratio_vector, l1_bounds,
                               peyser_bounds)
from .errors import NotARatioVector, RatvecError
from .fields import Surd, is_exact, parse_scalar, scalar_to_json, to_float
from .identities import IDENTITY_NAMES, verify_identity
from .quartic import (DEFAULT_TOL, QuarticRoots, critical_points, normalize_roots,
                      ratios_from_critical_points)
from .reconstruction import line_family, reconstruct, round_trip, solve_w

SCHEMA_VERSION = "v1"
TOL_ENV = "RATVEC_DEFAULT_TOL"


class InputError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol > 0:
        raise InputError(f"{TOL_ENV} must be positive")
    return tol


def _scalars(text: str, count: int, what: str) -> list:
    parts = [p for p in text.split(",")]
    if len(parts) != count:
        raise InputError(f"{what} needs {count} comma-separated values, got {len(parts)}")
    try:
        return [parse_scalar(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad {what}: {exc}") from None


def _scalar(text: str, what: str):
    return _scalars(text, 1, what)[0]


def _values(into: Optional[dict] = None, **kw) -> dict:
    """Serialize scalars into ``into``; exact ones also get a float in ``approx``."""
    out = {} if into is None else into
    approx = out.pop("approx", {})
    for key, val in kw.items():
        if isinstance(val, (list, tuple)):
            out[key] = [scalar_to_json(x) for x in val]
            if any(is_exact(x) for x in val):
                approx[key] = [to_float(x) for x in val]
        elif val is None or isinstance(val, (str, bool)):
            out[key] = val
        else:
            out[key] = scalar_to_json(val)
            if is_exact(val):
                approx[key] = to_float(val)
    if approx:
        out["approx"] = approx
    return out


def _bounds_json(bounds) -> list:
    return [{"name": b.name, "value": scalar_to_json(b.value), "approx": to_float(b.value),
             "satisfied": bool(b.satisfied), "margin": to_float(b.margin)} for b in bounds]


def _doc(command: str, verdict: str, region: Optional[str], values: dict,
         diagnostics: Sequence[str] = ()) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "verdict": verdict,
            "region": region, "values": values, "diagnostics": list(diagnostics)}


def _verdict_values(verdict) -> dict:
    return {"R": scalar_to_json(verdict.R_value), "k": scalar_to_json(verdict.k_value),
            "R_approx": to_float(verdict.R_value), "k_approx": to_float(verdict.k_value),
            "exact": verdict.exact, "bounds": _bounds_json(verdict.bound_report)}


# -- subcommands ------------------------------------------------------------

def cmd_forward(args) -> tuple[dict, int]:
    roots = QuarticRoots.of(_scalars(args.roots, 4, "--roots"))
    tol = args.tol if args.tol is not None else default_tol()
    crits = critical_points(roots, tol)
    rv = ratios_from_critical_points(roots, crits)
    canon, tmap = normalize_roots(roots)
    diagnostics = []
    if rv.exact:
        verdict = is_ratio_vector(*rv)
    else:
        # enclosure or float: decide on floats, widening the boundary band to the error bound
        err = to_float(rv.error_bound)
        verdict = is_ratio_vector(*(to_float(x) for x in rv),
                                  boundary_tol=max(BOUNDARY_TOL, 2 * err))
        if roots.exact:
            diagnostics.append(f"critical points certified to brackets of width "
                               f"{to_float(crits.certified_interval_width):.3g}")
    values = _values(roots=tuple(roots), critical_points=crits.as_tuple(),
                     u=rv.u, v=rv.v, w=rv.w, error_bound=rv.error_bound,
                     r=canon.r, s=canon.s, map_scale=tmap.scale, map_shift=tmap.shift)
    values.update(_verdict_values(verdict))
    label = "ratio-vector" if verdict.is_ratio_vector else "not-ratio-vector"
    return (_doc("forward", label, str(verdict.region), values,
                 diagnostics + list(verdict.diagnostics)),
            0 if verdict.is_ratio_vector else 1)


def cmd_check(args) -> tuple[dict, int]:
    u, v, w = _scalars(args.uvw, 3, "--uvw")
    if args.exact and not all(is_exact(x) for x in (u, v, w)):
        raise InputError("--exact needs rational (p/q) or surd inputs, not decimals")
    verdict = is_ratio_vector(u, v, w)
    values = _values(u=u, v=v, w=w)
    values.update(_verdict_values(verdict))
    label = "ratio-vector" if verdict.is_ratio_vector else "not-ratio-vector"
    return (_doc("check", label, str(verdict.region), values, verdict.diagnostics),
            0 if verdict.is_ratio_vector else 1)


def cmd_reconstruct(args) -> tuple[dict, int]:
    u, v, w = _scalars(args.uvw, 3, "--uvw")
    try:
        rec = reconstruct(u, v, w, unchecked=args.unchecked)
    except NotARatioVector as exc:
        verdict = is_ratio_vector(u, v, w)
        values = _values(u=u, v=v, w=w)
        values.update(_verdict_values(verdict))
        return _doc("reconstruct", "not-ratio-vector", str(verdict.region), values, [str(exc)]), 1
    diagnostics = []
    values = _values(u=u, v=v, w=w, r=rec.r, s=rec.s, s_alternative=rec.s_alternative,
                     coefficients=rec.coefficients, critical_points=rec.critical_points)
    if rec.off_variety:
        diagnostics.append("unchecked mode: point is not a ratio vector; formulas applied anyway")
        values["off_variety"] = True
        return _doc("reconstruct", "off-variety", None, values, diagnostics), 1
    report = round_trip(u, v, w, tol=default_tol())
    _values(values, derivative_at_critical_points=report.derivative_residuals,
            round_trip_deviation=report.deviation)
    values["critical_points_exact"] = report.critical_points_exact
    values["off_variety"] = False
    verdict = is_ratio_vector(u, v, w)
    return (_doc("reconstruct", "ratio-vector", str(verdict.region), values,
                 list(report.diagnostics) + list(verdict.diagnostics)), 0)


def cmd_solve_w(args) -> tuple[dict, int]:
    u = _scalar(args.u, "--u")
    v = _scalar(args.v, "--v")
    sols = solve_w(u, v)
    entries = []
    for w, verdict in sols:
        entries.append({"w": scalar_to_json(w), "approx": to_float(w), "text": str(w),
                        "is_ratio_vector": verdict.is_ratio_vector,
                        "region": str(verdict.region), "k": scalar_to_json(verdict.k_value)})
    members = [e for e in entries if e["is_ratio_vector"]]
    values = _values(u=u, v=v)
    values["solutions"] = entries
    label = "ratio-vector" if members else "not-ratio-vector"
    region = members[0]["region"] if members else None
    return _doc("solve-w", label, region, values), 0 if members else 1


def cmd_line(args) -> tuple[dict, int]:
    C = _scalar(args.c, "--c")
    res = line_family(C)
    values = _values(point=res.point, k_formula=res.k_formula)
    values.update(_verdict_values(res.verdict))
    if res.reconstruction is not None:
        _values(values, r=res.reconstruction.r, s=res.reconstruction.s)
    member = res.verdict.is_ratio_vector
    return (_doc("line", "ratio-vector" if member else "not-ratio-vector",
                 str(res.verdict.region), values, res.verdict.diagnostics),
            0 if member else 1)


def cmd_bounds(args) -> tuple[dict, int]:
    lo, hi = peyser_bounds(args.n, args.k)
    return _doc("bounds", "ok", None, _values(lower=lo, upper=hi)), 0


def cmd_verify_identities(args) -> tuple[dict, int]:
    names = args.only or list(IDENTITY_NAMES)
    results = []
    for name in names:
        if name not in IDENTITY_NAMES:
            raise InputError(f"unknown identity {name!r}; choose from {', '.join(IDENTITY_NAMES)}")
        res = verify_identity(name)
        results.append({"name": res.name, "description": res.description,
                        "passed": res.passed, "witness": str(res.witness),
                        "notes": list(res.notes)})
    ok = all(r["passed"] for r in results)
    return _doc("verify-identities", "pass" if ok else "fail", None,
                {"identities": results}), 0 if ok else 1


def cmd_sample(args):
    if args.count < 1:
        raise InputError("--count must be at least 1")
    if args.seed < 0:
        raise InputError("--seed must be nonnegative")
    fixed = None
    if args.fixed is not None:
        fixed = [to_float(x) for x in _scalars(args.fixed, 4, "--fixed")]
    tol = args.tol if args.tol is not None else default_tol()
    rows, summary = sample_campaign(args.count, args.seed, fixed=fixed, tol=tol,
                                    workers=args.workers)
    text = rows_to_csv(rows)
    doc = _doc("sample", "pass" if not summary.violations else "fail", None, summary.to_json())
    return text, doc, 0 if not summary.violations else 1


# -- parser -----------------------------------------------------------------

def _tol(text: str) -> float:
    try:
        tol = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tolerance {text!r}") from None
    if not tol > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return tol


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratvec",
        description="Ratio vectors of quartics with four distinct real roots.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", help="ratio vector of the quartic with the given roots")
    p.add_argument("--roots", required=True, help="four increasing roots, e.g. 1,3/2,13/8,7/4")
    p.add_argument("--tol", type=_tol, default=None,
                   help=f"bisection tolerance relative to each root gap (default {DEFAULT_TOL:g}, "
                        f"or ${TOL_ENV})")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("check", help="decide whether (u,v,w) is a ratio vector")
    p.add_argument("--uvw", required=True)
    p.add_argument("--exact", action="store_true", help="refuse decimal (float) inputs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reconstruct", help="canonical quartic (x+1)x(x-r)(x-s) for (u,v,w)")
    p.add_argument("--uvw", required=True)
    p.add_argument("--unchecked", action="store_true",
                   help="apply the closed forms even when (u,v,w) is not a ratio vector")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("solve-w", help="all w with R(u,v,w) = 0, with verdicts")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve_w)

    p = sub.add_parser("line", help="the point (C, 1/2, 1-C) of the line family")
    p.add_argument("--c", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_line)

    p = sub.add_parser("bounds", help="Peyser bounds 1/(n-k+1) < sigma_k < k/(k+1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-identities", help="run the exact identity suite")
    p.add_argument("--only", nargs="+", metavar="NAME", help="subset, e.g. I1 I7")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("sample", help="seeded random verification campaign (CSV)")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="CSV file; summary JSON then goes to stdout")
    p.add_argument("--fixed", help="use these four roots for every row instead of sampling")
    p.add_argument("--tol", type=_tol, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sample)
    return parser


def _text(val) -> str:
    if isinstance(val, dict) and set(val) == {"a", "b", "d", "c"}:
        return str(Surd.from_json(val))
    if isinstance(val, list):
        return "[" + ", ".join(_text(x) for x in val) + "]"
    return str(val)


def _render_text(doc: dict) -> str:
    lines = [f"{doc['command']}: {doc['verdict']}"]
    if doc.get("region"):
        lines.append(f"  region: {doc['region']}")
    values = doc["values"]
    approx = values.get("approx", {})
    for key, val in values.items():
        if key in ("approx", "bounds", "solutions", "identities"):
            continue
        shown = _text(val)
        if key in approx:
            shown += f"  (~ {approx[key]})"
        lines.append(f"  {key}: {shown}")
    for b in values.get("bounds", []):
        mark = "ok" if b["satisfied"] else "FAILS"
        lines.append(f"  bound {b['name']}: {b['approx']:.6g} [{mark}]")
    for sol in values.get("solutions", []):
        lines.append(f"  w = {sol['text']} (~ {sol['approx']:.6g}): "
                     f"{'ratio vector' if sol['is_ratio_vector'] else 'not a ratio vector'}"
                     f" [{sol['region']}]")
    for ident in values.get("identities", []):
        lines.append(f"  {ident['name']}: {'pass' if ident['passed'] else 'FAIL'}  "
                     f"{ident['description']}")
        if not ident["passed"]:
            lines.append(f"    witness: {ident['witness']}")
    for diag in doc.get("diagnostics", []):
        lines.append(f"  note: {diag}")
    return "\n".join(lines)


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "sample":
            text, doc, code = args.func(args)
            summary = json.dumps(doc, indent=2, sort_keys=True)
            if args.out:
                with open(args.out, "w", newline="") as fh:
                    fh.write(text)
                print(summary, file=stdout)
            else:
                stdout.write(text)
                print(summary, file=stderr)
            return code
        doc, code = args.func(args)
    except (InputError, RatvecError, ValueError, ZeroDivisionError) as exc:
        print(f"ratvec {args.command}: error: {exc}", file=stderr)
        return 2
    if getattr(args, "json", False):
        print(json.dumps(doc, indent=2, sort_keys=True), file=stdout)
    else:
        print(_render_text(doc), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
