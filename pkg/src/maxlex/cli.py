"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain/precondition error (including
a failed ``verify``), 4 oracle budget exceeded, 5 numerical convergence failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from . import kronecker, states
from .errors import BudgetExceeded, ConvergenceFailure, DomainError, MaxlexError
from .kronecker import kronecker_coefficient, phi_set, rational_spectra_slice
from .lr import lr_coefficient
from .partitions import Partition
from .strip_type import (
    counterexample_n_nplus1,
    counterexample_two_by_m,
    max_lex_spectrum,
    rect_strip_type,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET, EXIT_NUMERIC = 0, 2, 3, 4, 5
DEFAULT_PHI_BUDGET = 14
DEFAULT_KRON_BUDGET = 20


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    fmt: str = "text"
    margin_tol: float = states.MARGIN_TOL
    rank_tol: float = states.RANK_TOL
    budget: int | None = None
    cache: str | None = None

    def __post_init__(self) -> None:
        if self.margin_tol <= 0 or self.rank_tol <= 0:
            raise UsageError("tolerances must be positive")
        if self.budget is not None and self.budget < 1:
            raise UsageError("budget must be at least 1")

    def oracle_budget(self, default: int) -> int:
        return default if self.budget is None else self.budget


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _partition(text: str) -> Partition:
    return Partition.parse(text)


def _chain_text(chain) -> str:
    return " ⊃ ".join(str(p) if p else "∅" for p in chain)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS, help="margin tolerance")
    common.add_argument("--rank-tol", type=float, default=argparse.SUPPRESS, help="relative rank cutoff")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="oracle size budget")
    common.add_argument("--cache", default=argparse.SUPPRESS, help="character-table cache directory")

    parser = _Parser(prog="maxlex", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("kron", parents=[common], help="Kronecker coefficient g(lam, mu; nu)")
    p.add_argument("lam", type=_partition)
    p.add_argument("mu", type=_partition)
    p.add_argument("nu", type=_partition)

    p = sub.add_parser("phi", parents=[common], help="all nu with g(lam, mu; nu) > 0")
    p.add_argument("lam", type=_partition)
    p.add_argument("mu", type=_partition)

    p = sub.add_parser("lr", parents=[common], help="Littlewood-Richardson coefficient c^nu_{lam,mu}")
    p.add_argument("nu", type=_partition)
    p.add_argument("lam", type=_partition)
    p.add_argument("mu", type=_partition)

    p = sub.add_parser("striptype", parents=[common], help="strip-type derivation of two rectangles")
    p.add_argument("lam", type=_partition)
    p.add_argument("mu", type=_partition)

    p = sub.add_parser("maxlex", parents=[common], help="lex-maximal spectrum for uniform margins")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)

    p = sub.add_parser("counterexample", parents=[common], help="counterexample report")
    p.add_argument("--family", choices=("2xm", "adjacent"), required=True)
    p.add_argument("--param", type=int, required=True)

    p = sub.add_parser("construct", parents=[common], help="state with uniform margins and rank k")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--mode", choices=("full", "divisible"), default="full")

    p = sub.add_parser("verify", parents=[common], help="check a state JSON file ('-' for stdin)")
    p.add_argument("path")

    p = sub.add_parser("slice", parents=[common], help="rational spectra at stretching factor ell")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("ell", type=int)
    return parser


def _verification(rho: states.DensityOperator, cfg: CliConfig) -> dict:
    err_a, err_b = states.margin_errors(rho)
    spec = states.spectrum(rho)
    rank = states.numerical_rank(rho, cfg.rank_tol)
    ext = states.extremality_check(rho, rank_tol=cfg.rank_tol)
    bounds = states.rank_bounds(*sorted((rho.dim_a, rho.dim_b)))
    margins_ok = max(err_a, err_b) <= cfg.margin_tol
    return {
        "dim_a": rho.dim_a,
        "dim_b": rho.dim_b,
        "margin_error_a": err_a,
        "margin_error_b": err_b,
        "margins_ok": margins_ok,
        "rank": rank,
        "rank_bounds": [bounds.lower, bounds.upper],
        "spectrum": [float(x) for x in spec],
        "is_extreme": ext.is_extreme,
        "nullity": ext.nullity,
        "extremality_reliable": ext.reliable,
        "passed": margins_ok and rank in bounds,
    }


def _load_state(path: str) -> states.DensityOperator:
    text = sys.stdin.read() if path == "-" else open(path).read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON: {exc}") from None
    if isinstance(data, dict) and "state" in data:
        data = data["state"]
    try:
        return states.DensityOperator.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MaxlexError):
            raise
        raise DomainError(f"malformed state JSON: {exc}") from None


def dispatch(args: argparse.Namespace, cfg: CliConfig) -> tuple[dict, str, int]:
    """Run one subcommand; returns (json payload, text rendering, exit code)."""
    cmd = args.command
    if cmd == "kron":
        g = kronecker_coefficient(args.lam, args.mu, args.nu, budget=cfg.oracle_budget(DEFAULT_KRON_BUDGET))
        return {"lam": list(args.lam), "mu": list(args.mu), "nu": list(args.nu), "g": g}, str(g), EXIT_OK
    if cmd == "phi":
        phi = phi_set(args.lam, args.mu, budget=cfg.oracle_budget(DEFAULT_PHI_BUDGET), cache_dir=cfg.cache)
        payload = {
            "lam": list(phi.lam),
            "mu": list(phi.mu),
            "members": [{"nu": list(nu), "g": g} for nu, g in phi.members],
        }
        return payload, "\n".join(f"{nu} {g}" for nu, g in phi.members), EXIT_OK
    if cmd == "lr":
        c = lr_coefficient(outer=args.nu, inner_left=args.lam, inner_right=args.mu)
        payload = {"outer": list(args.nu), "inner_left": list(args.lam), "inner_right": list(args.mu), "c": c}
        return payload, str(c), EXIT_OK
    if cmd == "striptype":
        d = rect_strip_type(args.lam, args.mu)
        text = f"lam: {_chain_text(d.lam_chain)}\nmu:  {_chain_text(d.mu_chain)}\nnu:  {d.nu}"
        return d.to_dict(), text, EXIT_OK
    if cmd == "maxlex":
        spec, nu, k = max_lex_spectrum(args.n, args.m)
        payload = {"spectrum": spec.as_strings(), "nu": list(nu), "k": k, "rank": len(nu)}
        return payload, f"spectrum {spec}\nnu {nu}\nk {k}\nrank {len(nu)}", EXIT_OK
    if cmd == "counterexample":
        fn = counterexample_two_by_m if args.family == "2xm" else counterexample_n_nplus1
        report = fn(args.param, budget=cfg.oracle_budget(DEFAULT_KRON_BUDGET))
        d = report.to_dict()
        return d, "\n".join(f"{key} {value}" for key, value in d.items()), EXIT_OK
    if cmd == "construct":
        weights = states.weight_for_rank(args.n, args.m, args.k, args.mode)
        rho = states.construct_full(args.n, args.m, weights) if args.mode == "full" else \
            states.construct_divisible(args.n, args.m, weights)
        check = _verification(rho, cfg)
        payload = {"mode": args.mode, "weights": weights.to_json(), "state": rho.to_json(), "verification": check}
        text = json.dumps(payload)
        return payload, text, EXIT_OK if check["passed"] else EXIT_DOMAIN
    if cmd == "verify":
        check = _verification(_load_state(args.path), cfg)
        text = "\n".join(f"{key} {value}" for key, value in check.items())
        return check, text, EXIT_OK if check["passed"] else EXIT_DOMAIN
    if cmd == "slice":
        spectra = rational_spectra_slice(args.n, args.m, args.ell, budget=cfg.oracle_budget(DEFAULT_PHI_BUDGET))
        payload = {"n": args.n, "m": args.m, "ell": args.ell, "spectra": [s.as_strings() for s in spectra]}
        return payload, "\n".join(str(s) for s in spectra), EXIT_OK
    raise UsageError(f"unknown command {cmd}")


def _emit_error(fmt: str, name: str, code: int, detail: str, out, err) -> int:
    if fmt == "json":
        print(json.dumps({"error": name, "code": code, "detail": detail}), file=out)
    print(f"maxlex: {name}: {detail}", file=err)
    return code


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if "json" in argv and "--format" in argv else "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = getattr(args, "format", "text")
        cfg = CliConfig(
            fmt=fmt,
            margin_tol=getattr(args, "tolerance", states.MARGIN_TOL),
            rank_tol=getattr(args, "rank_tol", states.RANK_TOL),
            budget=getattr(args, "budget", None),
            cache=getattr(args, "cache", None) or os.environ.get(kronecker.CACHE_ENV),
        )
        payload, text, code = dispatch(args, cfg)
    except UsageError as exc:
        return _emit_error(fmt, "UsageError", EXIT_USAGE, str(exc), out, err)
    except BudgetExceeded as exc:
        return _emit_error(fmt, type(exc).__name__, EXIT_BUDGET, str(exc), out, err)
    except ConvergenceFailure as exc:
        return _emit_error(fmt, type(exc).__name__, EXIT_NUMERIC, str(exc), out, err)
    except DomainError as exc:
        return _emit_error(fmt, type(exc).__name__, EXIT_DOMAIN, str(exc), out, err)
    except OSError as exc:
        return _emit_error(fmt, type(exc).__name__, EXIT_DOMAIN, str(exc), out, err)
    print(json.dumps(payload) if fmt == "json" else text, file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
