"""
``mbound`` command line tool.

Commands
--------
bound     sharp constant for a shape pair or for raw moments
verify    check the Hardy inequalities on a step-function file
sweep     tabulate the constant over an (s1, s2) grid or the extremal family
extremal  build a power extremal and report its equality residual
search    randomized lower bound for the constant at one shape

Exit codes: 0 success, 1 a verification failed, 2 infeasible input,
3 search failure, 64 usage error, 65 malformed input file, 70 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import (
    DomainError,
    FormatError,
    MBoundError,
    NoSolutionError,
    SearchError,
)
from .function_space import (
    MomentData,
    extremal_from_eps,
    load,
    moments,
    save,
    shape_params,
    sharpness_search,
    solve_kappa0,
    theorem11_integrals,
    verify_main_bound,
    verify_omega_q_bound,
    verify_theorem11,
)
from .quadrature import DEFAULT_RTOL
from .roots import DEFAULT_TOL
from .sharp_bound import BoundResult, sharp_constant
from .special_functions import Exponents, ShapePair, h_p_value, omega

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INFEASIBLE = 2
EXIT_SEARCH = 3
EXIT_USAGE = 64
EXIT_FORMAT = 65
EXIT_SOFTWARE = 70

MAX_TOL = 1e-4
CSV_FIELDS = ("s1", "s2", "t_sharp", "t_zero", "case_tag", "omega_p_s1", "beta_star")
INFEASIBLE = "INFEASIBLE"
COMMANDS = ("bound", "verify", "sweep", "extremal", "search")


class UsageError(Exception):
    """Invalid combination of command-line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RunConfig:
    command: str
    exponents: Exponents
    root_tol: float
    quad_tol: float
    output_format: str
    seed: Optional[int] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for name in ("root_tol", "quad_tol"):
            val = getattr(self, name)
            if not (0.0 < val <= MAX_TOL):
                raise UsageError(f"--{name.replace('_', '-')} must lie in (0, {MAX_TOL:g}], got {val!r}")
        if self.command == "search" and self.seed is None:
            raise UsageError("search requires --seed")
        if self.command != "search" and self.seed is not None:
            raise UsageError(f"--seed is only accepted by search, not {self.command}")


def fmt(v) -> str:
    """17-significant-digit decimal, empty for ``None``."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def _dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(row.get(k)) for k in header])
    return buf.getvalue()


def _human_block(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k:<{width}} = {fmt(v)}\n" for k, v in pairs)


def _threads() -> int:
    raw = os.environ.get("MBOUND_THREADS", "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"MBOUND_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"MBOUND_THREADS must be a positive integer, got {raw!r}")
    return n


# --------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-p", "--p", type=float, required=True, help="outer exponent p > q")
    common.add_argument("-q", "--q", type=float, required=True, help="inner exponent q > 1")
    common.add_argument("--root-tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--quad-tol", type=float, default=DEFAULT_RTOL)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human",
                        dest="output_format")
    common.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=None)

    parser = _Parser(prog="mbound", allow_abbrev=False, description="Sharp three-moment Hardy bounds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", parents=[common], allow_abbrev=False, help="sharp constant t(s1, s2)")
    b.add_argument("--s1", type=float)
    b.add_argument("--s2", type=float)
    b.add_argument("--x", type=float)
    b.add_argument("--y", type=float)
    b.add_argument("--z", type=float)
    b.add_argument("--kappa", type=float)

    v = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="check inequalities on a step function")
    v.add_argument("input_file")
    v.add_argument("--beta", type=float, help="single beta > 0 (default: 20-point grid on (0, 3])")
    v.add_argument("--tolerance", type=float, default=1e-9,
                   help="relative slack below which a check fails")

    s = sub.add_parser("sweep", parents=[common], allow_abbrev=False, help="tabulate t(s1, s2)")
    s.add_argument("--s1-range", type=float, nargs=3, metavar=("LO", "HI", "N"))
    s.add_argument("--s2-range", type=float, nargs=3, metavar=("LO", "HI", "N"))
    s.add_argument("--eps-range", type=float, nargs=3, metavar=("LO", "HI", "N"),
                   help="sweep the extremal shapes (H_p(eps), H_q(eps))")

    e = sub.add_parser("extremal", parents=[common], allow_abbrev=False, help="power extremal and equality residual")
    e.add_argument("--eps", type=float)
    e.add_argument("--kappa", type=float, default=None, help="kappa0 (default 1)")
    e.add_argument("--f", type=float, default=1.0, help="int g")
    e.add_argument("--A", type=float, help="int g^q (with --F: solve for kappa0)")
    e.add_argument("--F", type=float, help="int g^p")

    r = sub.add_parser("search", parents=[common], allow_abbrev=False, help="randomized lower bound")
    r.add_argument("--s1", type=float, required=True)
    r.add_argument("--s2", type=float, required=True)
    r.add_argument("--n-steps", type=int, default=64)
    r.add_argument("--iters", type=int, default=5000)
    r.add_argument("--save", metavar="FILE", default="mbound_search_best.json",
                   help="where to write the best step function")
    return parser


# ------------------------------------------------------------------- commands


def _bound_row(res: BoundResult, shape: ShapePair) -> dict:
    return {"s1": shape.s1, "s2": shape.s2, "t_sharp": res.t_sharp, "t_zero": res.t_zero,
            "case_tag": res.case_tag.value, "omega_p_s1": res.omega_p_s1,
            "beta_star": res.beta_star}


def cmd_bound(cfg: RunConfig, args) -> tuple[int, str]:
    shape_given = [a is not None for a in (args.s1, args.s2)]
    moment_given = [a is not None for a in (args.x, args.y, args.z, args.kappa)]
    if any(shape_given) and any(moment_given):
        raise UsageError("give either --s1/--s2 or --x/--y/--z/--kappa, not both")
    if all(shape_given):
        shape = ShapePair(args.s1, args.s2)
    elif all(moment_given):
        shape = shape_params(MomentData(args.kappa, args.x, args.y, args.z), cfg.exponents)
    else:
        raise UsageError("need the full group --s1 --s2 or --x --y --z --kappa")
    res = sharp_constant(cfg.exponents, shape, cfg.root_tol)
    if cfg.output_format == "json":
        return EXIT_OK, _dump_json(asdict(res))
    if cfg.output_format == "csv":
        return EXIT_OK, _csv_text(CSV_FIELDS, [_bound_row(res, shape)])
    pairs = [("s1", shape.s1), ("s2", shape.s2), ("t_sharp", res.t_sharp),
             ("t_zero", res.t_zero), ("case_tag", res.case_tag.value),
             ("beta_star", res.beta_star), ("omega_p_s1", res.omega_p_s1)]
    if res.constant_boundary:
        pairs.append(("constant_boundary", True))
    return EXIT_OK, _human_block(pairs)


def _report_dict(rep) -> dict:
    return {"name": rep.name, "lhs": rep.lhs, "rhs": rep.rhs, "slack": rep.slack,
            "relative_slack": rep.relative_slack, "passed": rep.passed,
            "details": rep.details}


def cmd_verify(cfg: RunConfig, args) -> tuple[int, str]:
    if not args.tolerance > 0.0:
        raise UsageError(f"--tolerance must be positive, got {args.tolerance!r}")
    if args.beta is not None and not args.beta > 0.0:
        raise UsageError(f"--beta must be positive, got {args.beta!r}")
    h = load(args.input_file)
    exp = cfg.exponents
    betas = [args.beta] if args.beta is not None else list(np.linspace(0.15, 3.0, 20))
    ints = theorem11_integrals(h, exp, cfg.quad_tol)
    reports = [verify_theorem11(h, exp, float(b), cfg.quad_tol, args.tolerance, ints)
               for b in betas]
    reports.append(verify_omega_q_bound(h, exp, cfg.quad_tol, args.tolerance, tol=cfg.root_tol))
    reports.append(verify_main_bound(h, exp, cfg.root_tol, cfg.quad_tol, args.tolerance))
    ok = all(r.passed for r in reports)
    code = EXIT_OK if ok else EXIT_VERIFY_FAILED
    if cfg.output_format == "json":
        return code, _dump_json({"passed": ok, "reports": [_report_dict(r) for r in reports]})
    header = ("name", "beta", "lhs", "rhs", "slack", "relative_slack", "passed")
    rows = [{"name": r.name, "beta": r.details.get("beta"), "lhs": r.lhs, "rhs": r.rhs,
             "slack": r.slack, "relative_slack": r.relative_slack, "passed": r.passed}
            for r in reports]
    if cfg.output_format == "csv":
        return code, _csv_text(header, rows)
    lines = []
    for row in rows:
        beta = "" if row["beta"] is None else f" beta={row['beta']:.4g}"
        status = "ok" if row["passed"] else "FAILED"
        lines.append(f"{row['name']:<14}{beta:<13} lhs={fmt(row['lhs'])} rhs={fmt(row['rhs'])} "
                     f"slack={row['slack']:.3e} [{status}]")
    main = reports[-1]
    lines.append(f"J^(1/p) = {fmt(main.lhs)}  t_sharp = {fmt(main.rhs)}  "
                 f"case = {main.details['case_tag']}"
                 + ("  (constant function)" if main.details["constant_boundary"] else ""))
    lines.append("all checks passed" if ok else "SOME CHECKS FAILED")
    return code, "\n".join(lines) + "\n"


def _grid(spec, name):
    lo, hi, n = spec
    if n != int(n) or n < 1:
        raise UsageError(f"--{name}-range: N must be a positive integer, got {n!r}")
    n = int(n)
    if n == 1:
        return np.array([lo])
    return np.linspace(lo, hi, n)


def _sweep_cell(exp, s1, s2, tol, eps=None):
    row = {"s1": float(s1), "s2": float(s2)}
    if eps is not None:
        row["eps"] = float(eps)
    try:
        shape = ShapePair(float(s1), float(s2))
        res = sharp_constant(exp, shape, tol)
    except DomainError:
        row["case_tag"] = INFEASIBLE
        return row
    except MBoundError as exc:
        row["case_tag"] = f"ERROR:{type(exc).__name__}"
        return row
    row.update(_bound_row(res, shape))
    row["s1"], row["s2"] = float(s1), float(s2)
    return row


def cmd_sweep(cfg: RunConfig, args) -> tuple[int, str]:
    exp = cfg.exponents
    if args.eps_range is not None:
        if args.s1_range is not None or args.s2_range is not None:
            raise UsageError("--eps-range excludes --s1-range/--s2-range")
        eps = _grid(args.eps_range, "eps")
        if np.any(eps <= 1.0) or np.any(eps >= exp.conjugate):
            raise UsageError(f"eps values must lie in (1, {exp.conjugate!r})")
        cells = [(h_p_value(exp.p, e), h_p_value(exp.q, e), e) for e in eps]
        header = ("eps",) + CSV_FIELDS
    else:
        if args.s1_range is None or args.s2_range is None:
            raise UsageError("sweep needs --s1-range and --s2-range, or --eps-range")
        s1s, s2s = _grid(args.s1_range, "s1"), _grid(args.s2_range, "s2")
        cells = [(a, b, None) for a in s1s for b in s2s]
        header = CSV_FIELDS
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(lambda c: _sweep_cell(exp, c[0], c[1], cfg.root_tol, c[2]), cells))
    if cfg.output_format == "json":
        return EXIT_OK, _dump_json([{k: r.get(k) for k in header} for r in rows])
    if cfg.output_format == "csv":
        return EXIT_OK, _csv_text(header, rows)
    out = io.StringIO()
    out.write("  ".join(f"{k:>24}" for k in header) + "\n")
    for r in rows:
        out.write("  ".join(f"{fmt(r.get(k)):>24}" for k in header) + "\n")
    return EXIT_OK, out.getvalue()


def cmd_extremal(cfg: RunConfig, args) -> tuple[int, str]:
    exp = cfg.exponents
    from_moments = args.A is not None or args.F is not None
    if from_moments:
        if args.A is None or args.F is None:
            raise UsageError("--A and --F must be given together")
        if args.eps is not None or args.kappa is not None:
            raise UsageError("--A/--F determine eps and kappa0; drop --eps/--kappa")
        kappa0 = solve_kappa0(exp, args.f, args.A, args.F, cfg.root_tol)
        sp = min(args.f**exp.p / (kappa0 ** (exp.p - 1.0) * args.F), 1.0)
        eps = omega(exp.p, sp, cfg.root_tol)
        if not eps > 1.0:
            raise NoSolutionError("moments describe a constant function; no power extremal")
    else:
        if args.eps is None:
            raise UsageError("extremal needs --eps or --A/--F")
        eps = args.eps
        kappa0 = 1.0 if args.kappa is None else args.kappa
    g = extremal_from_eps(exp, eps, kappa0, args.f)
    m = moments(g, exp)
    shape = shape_params(m, exp)
    rep = verify_theorem11(g, exp, eps - 1.0, cfg.quad_tol)
    res = sharp_constant(exp, shape, cfg.root_tol)
    record = {"theta": g.theta, "eps": g.eps, "kappa0": g.kappa0, "f": m.x, "A": m.y, "F": m.z,
              "s1": shape.s1, "s2": shape.s2, "equality_residual": rep.slack,
              "relative_residual": rep.relative_slack, "t_sharp": res.t_sharp}
    if cfg.output_format == "json":
        return EXIT_OK, _dump_json(record)
    if cfg.output_format == "csv":
        return EXIT_OK, _csv_text(tuple(record), [record])
    return EXIT_OK, _human_block(list(record.items()))


def cmd_search(cfg: RunConfig, args) -> tuple[int, str]:
    exp = cfg.exponents
    shape = ShapePair(args.s1, args.s2)
    if args.n_steps < 1 or args.iters < 1:
        raise UsageError("--n-steps and --iters must be positive")
    res = sharp_constant(exp, shape, cfg.root_tol)
    ratio, h = sharpness_search(exp, shape, args.n_steps, args.iters, cfg.seed, cfg.quad_tol)
    save(h, args.save)
    record = {"best_ratio": ratio, "t_sharp": res.t_sharp, "gap": res.t_sharp - ratio,
              "n_steps": args.n_steps, "iters": args.iters, "seed": cfg.seed,
              "function_file": str(args.save)}
    if cfg.output_format == "json":
        return EXIT_OK, _dump_json(record)
    if cfg.output_format == "csv":
        return EXIT_OK, _csv_text(tuple(record), [record])
    return EXIT_OK, _human_block(list(record.items()))


_DISPATCH = {"bound": cmd_bound, "verify": cmd_verify, "sweep": cmd_sweep,
             "extremal": cmd_extremal, "search": cmd_search}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig(args.command, Exponents(args.p, args.q), args.root_tol,
                        args.quad_tol, args.output_format, args.seed)
        code, text = _DISPATCH[args.command](cfg, args)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"mbound: malformed input: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except SearchError as exc:
        print(f"mbound: search failed: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except (DomainError, NoSolutionError) as exc:
        print(f"mbound: infeasible input: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except MBoundError as exc:
        print(f"mbound: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOFTWARE
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
