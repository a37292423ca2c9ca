"""Command-line front end: evaluate functions, verify inequalities, scan
monotonicity, and run the built-in selftest.

Exit codes: 0 all pass, 1 numeric failure, 2 hypothesis/domain error,
3 tolerance-not-met.  Report output is deterministic: identical
configuration (including seed) produces byte-identical CSV/JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import selftest as selftest_mod
from .core_special import (
    DomainError,
    EvalResult,
    SeriesControl,
    ToleranceNotMet,
    default_series_control,
    gamma,
    psi_series,
)
from .gen_gamma import (
    FamilyParam,
    KParam,
    PParam,
    QParam,
    gamma_k,
    gamma_p,
    gamma_q,
    psi_k,
    psi_p,
    psi_q,
)
from .inequality_engine import (
    DEFAULT_TOL_REPORT,
    GenParams,
    check_sandwich_k,
    check_sandwich_p,
    check_sandwich_q,
    family_callables,
    omega,
    phi,
    scan_monotone,
    theta,
)

EXIT_OK = 0
EXIT_NUMERIC_FAIL = 1
EXIT_DOMAIN = 2
EXIT_TOL = 3

EVAL_FUNCTIONS = ("gamma", "psi", "gamma_p", "psi_p", "gamma_q", "psi_q",
                  "gamma_k", "psi_k", "omega", "phi", "theta")

CSV_COLUMNS = ("t", "lower", "middle", "upper",
               "lower_margin", "upper_margin", "strict", "pass")


@dataclass(frozen=True)
class SweepConfig:
    """Everything that determines one verification or scan sweep."""

    family: str
    gen_params: GenParams
    family_param: FamilyParam
    grid: tuple
    grid_spec: str
    seed: int
    tol: float
    tol_report: float
    output_path: str | None
    format: str

    def as_dict(self) -> dict:
        key = {"p": "p", "q": "q", "k": "k"}[self.family]
        value = getattr(self.family_param, key)
        return {
            "family": self.family,
            "a": self.gen_params.a,
            "b": self.gen_params.b,
            "alpha": self.gen_params.alpha,
            "beta": self.gen_params.beta,
            key: value,
            "grid_spec": self.grid_spec,
            "grid": list(self.grid),
            "seed": self.seed,
            "tol": self.tol,
            "tol_report": self.tol_report,
            "format": self.format,
        }


def parse_grid_spec(spec: str) -> tuple:
    """Parse 'start:stop:step' (inclusive endpoints, within float slack) or a
    comma-separated explicit list; the result must be strictly increasing."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise DomainError(f"grid spec must be start:stop:step (got {spec!r})")
        start, stop, step = (float(x) for x in parts)
        if not step > 0 or stop < start:
            raise DomainError(f"grid spec needs step > 0 and stop >= start (got {spec!r})")
        count = int((stop - start) / step + 1e-9) + 1
        grid = tuple(start + i * step for i in range(count))
    else:
        grid = tuple(float(x) for x in spec.split(","))
    if not grid:
        raise DomainError("grid spec produced no points")
    if any(t1 >= t2 for t1, t2 in zip(grid, grid[1:])):
        raise DomainError("grid must be strictly increasing")
    return grid


def _fmt17(x: float) -> str:
    return np.format_float_positional(x, precision=17, unique=False,
                                      fractional=False)


def _repr_num(x) -> str:
    return repr(float(x))


def _bool_str(b: bool) -> str:
    return "true" if b else "false"


def _report_row_dict(r) -> dict:
    return {
        "t": r.t,
        "lower": r.lower,
        "middle": r.middle,
        "upper": r.upper,
        "lower_margin": r.lower_margin,
        "upper_margin": r.upper_margin,
        "strict": r.strict,
        "pass": r.passed,
        "tol_report": r.tol_report,
        "note": r.note,
    }


def render_reports_csv(rows) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        lines.append(",".join([
            _repr_num(r.t), _repr_num(r.lower), _repr_num(r.middle),
            _repr_num(r.upper), _repr_num(r.lower_margin),
            _repr_num(r.upper_margin), _bool_str(r.strict),
            _bool_str(r.passed),
        ]))
    return "\n".join(lines) + "\n"


def render_reports_json(config: SweepConfig, rows) -> str:
    n_pass = sum(1 for r in rows if r.passed)
    obj = {
        "config": config.as_dict(),
        "rows": [_report_row_dict(r) for r in rows],
        "summary": {
            "total": len(rows),
            "passed": n_pass,
            "failed": len(rows) - n_pass,
            "all_pass": n_pass == len(rows),
            "min_lower_margin": min((r.lower_margin for r in rows), default=None),
            "min_upper_margin": min((r.upper_margin for r in rows), default=None),
        },
    }
    return json.dumps(obj, indent=2) + "\n"


def _emit(content: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(content)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(content)


def _series_control(tol: float | None) -> SeriesControl:
    base = default_series_control()
    if tol is None:
        return base
    return SeriesControl(max_terms=base.max_terms, tol=tol)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_eval(args) -> int:
    ctrl = _series_control(args.tol)
    gp = None
    if args.fn in ("omega", "phi", "theta"):
        gp = GenParams(args.a, args.b, args.alpha, args.beta)

    def need(flag, value):
        if value is None:
            raise DomainError(f"--{flag} is required for {args.fn}")
        return value

    fn = args.fn
    if fn == "gamma":
        result = gamma(need("t", args.t))
    elif fn == "psi":
        result = psi_series(need("t", args.t), ctrl)
    elif fn == "gamma_p":
        result = gamma_p(need("t", args.t), need("p", args.p))
    elif fn == "psi_p":
        result = psi_p(need("t", args.t), need("p", args.p))
    elif fn == "gamma_q":
        result = gamma_q(need("t", args.t), need("q", args.q), ctrl)
    elif fn == "psi_q":
        result = psi_q(need("t", args.t), need("q", args.q), ctrl)
    elif fn == "gamma_k":
        result = gamma_k(need("t", args.t), need("k", args.k))
    elif fn == "psi_k":
        result = psi_k(need("t", args.t), need("k", args.k), ctrl)
    elif fn == "omega":
        result = omega(need("t", args.t), gp, need("p", args.p))
    elif fn == "phi":
        result = phi(need("t", args.t), gp, need("q", args.q), ctrl)
    else:
        result = theta(need("t", args.t), gp, need("k", args.k))

    if isinstance(result, EvalResult):
        print(_fmt17(result.value))
        print(f"err_bound {result.err_bound!r} terms_used {result.terms_used}")
        if not result.converged:
            print("tolerance not met: series budget exhausted before reaching "
                  f"tol={ctrl.tol!r} (err_bound {result.err_bound!r})",
                  file=sys.stderr)
            return EXIT_TOL
    else:
        print(_fmt17(result))
    return EXIT_OK


def _sweep_config(args, where: str) -> SweepConfig:
    gp = GenParams(args.a, args.b, args.alpha, args.beta)
    if args.family == "p":
        if args.p is None:
            raise DomainError("--p is required for family p")
        param = PParam(args.p)
    elif args.family == "q":
        if args.q is None:
            raise DomainError("--q is required for family q")
        param = QParam(args.q)
    else:
        if args.k is None:
            raise DomainError("--k is required for family k")
        param = KParam(args.k)
    grid = parse_grid_spec(args.grid)
    if where == "sandwich" and any(not 0.0 < t < 1.0 for t in grid):
        raise DomainError("sandwich grids must lie strictly in (0, 1)")
    if where == "monotone" and any(t <= 0.0 for t in grid):
        raise DomainError("monotone grids must lie strictly in (0, inf)")
    if not args.tol_report > 0:
        raise DomainError(f"tol-report must be > 0 (got {args.tol_report})")
    return SweepConfig(
        family=args.family, gen_params=gp, family_param=param, grid=grid,
        grid_spec=args.grid, seed=args.seed,
        tol=args.tol if args.tol is not None else default_series_control().tol,
        tol_report=args.tol_report, output_path=args.out, format=args.format,
    )


def _cmd_verify(args) -> int:
    config = _sweep_config(args, "sandwich")
    ctrl = _series_control(args.tol)
    gp = config.gen_params
    if config.family == "p":
        rows = check_sandwich_p(gp, config.family_param.p, config.grid,
                                config.tol_report)
    elif config.family == "q":
        rows = check_sandwich_q(gp, config.family_param.q, config.grid,
                                config.tol_report, ctrl)
    else:
        rows = check_sandwich_k(gp, config.family_param.k, config.grid,
                                config.tol_report)
    content = (render_reports_csv(rows) if config.format == "csv"
               else render_reports_json(config, rows))
    _emit(content, config.output_path)
    n_pass = sum(1 for r in rows if r.passed)
    verdict = "PASS" if n_pass == len(rows) else "FAIL"
    count = n_pass if verdict == "PASS" else len(rows) - n_pass
    print(f"{verdict} {count}/{len(rows)}")
    return EXIT_OK if verdict == "PASS" else EXIT_NUMERIC_FAIL


def _cmd_scan(args) -> int:
    config = _sweep_config(args, "monotone")
    ctrl = _series_control(args.tol)
    key = config.family
    param = getattr(config.family_param, key)
    fn, log_deriv = family_callables(key, config.gen_params, param, ctrl)
    scan = scan_monotone(fn, log_deriv, config.grid)
    if config.format == "csv":
        lines = ["t,value"]
        lines += [f"{_repr_num(t)},{_repr_num(v)}"
                  for t, v in zip(scan.grid, scan.values)]
        content = "\n".join(lines) + "\n"
    else:
        obj = {
            "config": config.as_dict(),
            "grid": list(scan.grid),
            "values": list(scan.values),
            "min_forward_diff": scan.min_forward_diff,
            "derivative_min": scan.derivative_min,
        }
        content = json.dumps(obj, indent=2) + "\n"
    _emit(content, config.output_path)
    ok = (scan.min_forward_diff >= -config.tol_report
          and scan.derivative_min >= -config.tol_report)
    print(f"{'PASS' if ok else 'FAIL'} min_forward_diff={scan.min_forward_diff!r} "
          f"derivative_min={scan.derivative_min!r}")
    return EXIT_OK if ok else EXIT_NUMERIC_FAIL


def _cmd_selftest(args) -> int:
    return selftest_mod.run(quick=args.quick, seed=args.seed)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _add_gen_param_flags(sub):
    sub.add_argument("--a", type=float, default=1.0)
    sub.add_argument("--b", type=float, default=1.0)
    sub.add_argument("--alpha", type=float, default=1.0)
    sub.add_argument("--beta", type=float, default=1.0)
    sub.add_argument("--p", type=int, default=None)
    sub.add_argument("--q", type=float, default=None)
    sub.add_argument("--k", type=float, default=None)
    sub.add_argument("--tol", type=float, default=None,
                     help="series tail-bound target (default 1e-12)")


def _add_sweep_flags(sub):
    _add_gen_param_flags(sub)
    sub.add_argument("--family", choices=("p", "q", "k"), required=True)
    sub.add_argument("--grid", required=True,
                     help="start:stop:step or comma-separated values")
    sub.add_argument("--tol-report", type=float, default=DEFAULT_TOL_REPORT,
                     dest="tol_report")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", default=None, help="report file (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammagen",
        description="Generalized Gamma functions and inequality verification")
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate one function")
    p_eval.add_argument("fn", choices=EVAL_FUNCTIONS)
    p_eval.add_argument("--t", type=float, default=None)
    _add_gen_param_flags(p_eval)
    p_eval.set_defaults(handler=_cmd_eval)

    p_verify = subs.add_parser("verify", help="check a sandwich inequality on a grid")
    _add_sweep_flags(p_verify)
    p_verify.set_defaults(handler=_cmd_verify)

    p_scan = subs.add_parser("scan", help="scan an auxiliary function for monotonicity")
    _add_sweep_flags(p_scan)
    p_scan.set_defaults(handler=_cmd_scan)

    p_self = subs.add_parser("selftest", help="run oracle cross-validation suites")
    p_self.add_argument("--quick", action="store_true")
    p_self.add_argument("--seed", type=int, default=selftest_mod.DEFAULT_SEED)
    p_self.set_defaults(handler=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OverflowError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ToleranceNotMet as exc:
        print(f"tolerance not met: {exc}", file=sys.stderr)
        return EXIT_TOL


if __name__ == "__main__":
    sys.exit(main())
