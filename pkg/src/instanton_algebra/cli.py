"""Command line front end: one subcommand per verification, JSON on stdout.

Exit status is 0 when every check passes, 1 when a check fails (the report
is still printed) and 2 for malformed arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import monad as mon
from .hilbert import decomposition_check
from .index import IndexProblem, brute_force_spinc, chosen_classes, dirac_index, enumerate_spinc
from .restriction import identity_check, kernel_equals_ideal
from .stable_maps import surjectivity_check

DEFAULT_MAX_DEGREE = 12
DEFAULT_M_MAX = 6
DEFAULT_SAMPLES = 100
DEFAULT_TOL = 1e-10


class UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated integer list, got {text!r}")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _pos_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=_nonneg, help="number of CP^2 summands")
    common.add_argument("--k", type=_nonneg, help="instanton charge")
    common.add_argument("--r", type=_positive, help="bundle rank")
    common.add_argument("--c", type=_int_list, help="Spin^c class, comma separated")
    common.add_argument("--c1e", type=_int_list, help="first Chern class of E, comma separated")
    common.add_argument("--max-degree", type=_positive, default=DEFAULT_MAX_DEGREE)
    common.add_argument("--m-max", type=_positive, default=DEFAULT_M_MAX)
    common.add_argument("--samples", type=_positive, default=DEFAULT_SAMPLES)
    common.add_argument("--tol", type=_pos_float, default=DEFAULT_TOL)
    common.add_argument("--seed", type=int, default=mon.DEFAULT_SEED)
    common.add_argument("--spec", metavar="PATH", help="JSON input (monad subcommand)")
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(prog="instanton-check", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("index", "Dirac index for one Spin^c class"),
        ("spinc", "enumerate Spin^c classes with c.c = q"),
        ("kernel", "kernel of the restriction map vs the relation ideal"),
        ("hilbert", "Hilbert vector of the quotient vs the direct-sum splitting"),
        ("surjectivity", "surjectivity of the stable homology map"),
        ("identity", "the reduction identity between relation families"),
        ("monad", "monad data checks"),
        ("all", "run every check"),
    ]:
        sub.add_parser(name, parents=[common], help=help_)
    return parser


# --- individual commands -------------------------------------------------------


def cmd_index(args) -> dict:
    q = 1 if args.q is None else args.q
    k = 1 if args.k is None else args.k
    r = 2 if args.r is None else args.r
    c = args.c if args.c is not None else list(chosen_classes(q)[0].c)
    c1e = args.c1e if args.c1e is not None else [0] * q
    try:
        value = dirac_index(IndexProblem(q, k, r, tuple(c1e), tuple(c)))
    except ValueError as exc:
        raise UsageError(str(exc))
    return {"q": q, "k": k, "r": r, "c": c, "c1e": c1e, "index": value, "ok": True}


def cmd_spinc(args) -> dict:
    q = 2 if args.q is None else args.q
    classes = [list(c.c) for c in enumerate_spinc(q)]
    brute = sorted(brute_force_spinc(q))
    ok = len(classes) == 2 ** q and sorted(map(tuple, classes)) == brute
    return {"q": q, "count": len(classes), "classes": classes, "matches_brute_force": ok, "ok": ok}


def _kernel(q: int, k: int, D: int) -> dict:
    rep = kernel_equals_ideal(q, k, D)
    out = rep.to_json()
    out["ok"] = rep.ok
    return out


def cmd_kernel(args) -> dict:
    q = 2 if args.q is None else args.q
    k = 2 if args.k is None else args.k
    if k not in (1, 2):
        raise UsageError("kernel comparison is available for k = 1, 2")
    if q < 1:
        raise UsageError("kernel comparison needs q >= 1")
    return _kernel(q, k, args.max_degree)


def cmd_hilbert(args) -> dict:
    q = 2 if args.q is None else args.q
    rep = decomposition_check(q, args.max_degree)
    out = rep.to_json()
    out["ok"] = rep.ok
    return out


def cmd_surjectivity(args) -> dict:
    q = 2 if args.q is None else args.q
    if q < 1:
        raise UsageError("surjectivity needs q >= 1")
    rep = surjectivity_check(q, args.m_max)
    out = rep.to_json()
    out["ok"] = rep.ok
    return out


def cmd_identity(args) -> dict:
    ok = identity_check()
    return {"identity": ok, "ok": ok}


def _load_config(args):
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read --spec: {exc}")
    else:
        data = {"mode": "random_m0"}
    try:
        if data.get("mode") == "random_m0":
            k = int(data.get("k", 2 if args.k is None else args.k))
            r = int(data.get("r", 5 if args.r is None else args.r))
            seed = int(data.get("seed", args.seed))
            sp = mon.SubspacePair.random(k, r, np.random.default_rng(seed))
            return mon.m0_config(sp), sp
        return mon.config_from_json(data), None
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed monad spec: {exc}")


def cmd_monad(args) -> dict:
    cfg, sp = _load_config(args)
    residual = mon.integrability_residual(cfg)
    out: Dict[str, object] = {
        "k": cfg.k,
        "r": cfg.r,
        "integrability_residual": residual,
        "is_m0": cfg.is_m0,
    }
    ok = residual <= args.tol
    if cfg.is_m0 and cfg.k > 0:
        pts = mon.sample_blowup_points(args.samples, args.seed)
        comp = [mon.composite_residual(cfg, p) for p in pts]
        exact = mon.exactness_check(cfg, pts)
        out["points"] = len(pts)
        out["composite_residual_max"] = max(comp)
        out["exact_at_all_points"] = exact.ok
        out["inexact_points"] = [
            {"x": [[z.real, z.imag] for z in p.x], "rank_A": p.rank_A, "rank_B": p.rank_B}
            for p in exact.points
            if not p.exact
        ]
        ok = ok and max(comp) <= args.tol and exact.ok
        try:
            rec = mon.m0_subspaces(cfg)
            out["subspace_roundtrip_distance"] = mon.pair_distance(rec, sp) if sp is not None else None
        except mon.DegenerateConfiguration as exc:
            out["subspaces_error"] = str(exc)
            ok = False
    if cfg.r > 2 * cfg.k and cfg.k > 0:
        dim = mon.m0_dimension_check(cfg.k, cfg.r, args.seed)
        out["dimension"] = {"measured": dim.measured, "expected": dim.expected}
        ok = ok and dim.ok
    out["ok"] = bool(ok)
    return out


def cmd_all(args) -> dict:
    q = 2 if args.q is None else args.q
    results: Dict[str, dict] = {}
    results["index"] = {
        "ok": all(
            dirac_index(IndexProblem(q, k, r, (0,) * q, c.c)) == k
            for c in enumerate_spinc(q)
            for k in range(1, 6)
            for r in range(2, 11)
        )
    }
    results["spinc"] = cmd_spinc(args)
    if q >= 1:
        for k in (1, 2):
            results[f"kernel_k{k}"] = _kernel(q, k, args.max_degree)
        results["surjectivity"] = cmd_surjectivity(args)
    results["hilbert"] = cmd_hilbert(args)
    results["identity"] = cmd_identity(args)
    results["monad"] = cmd_monad(args)
    return {"q": q, "checks": results, "ok": all(r["ok"] for r in results.values())}


COMMANDS: Dict[str, Callable] = {
    "index": cmd_index,
    "spinc": cmd_spinc,
    "kernel": cmd_kernel,
    "hilbert": cmd_hilbert,
    "surjectivity": cmd_surjectivity,
    "identity": cmd_identity,
    "monad": cmd_monad,
    "all": cmd_all,
}


# --- output ----------------------------------------------------------------------


def render_table(report: dict, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(render_table(value, indent + "  "))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            cols = list(value[0])
            width = {c: max(len(c), *(len(str(v.get(c, ""))) for v in value)) for c in cols}
            lines.append(f"{indent}{key}:")
            lines.append(indent + "  " + "  ".join(c.rjust(width[c]) for c in cols))
            for v in value:
                lines.append(indent + "  " + "  ".join(str(v.get(c, "")).rjust(width[c]) for c in cols))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"instanton-check: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "table":
        print(render_table(report), file=stdout)
    else:
        print(json.dumps(report, sort_keys=True), file=stdout)
    return 0 if report.get("ok") else 1


def main() -> None:
    sys.exit(run())
