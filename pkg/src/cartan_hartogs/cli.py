"""Command-line front end: invariants, Hua data, epsilon values, coefficients, classification, checks."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .algebra.poly import as_fraction, fraction_to_str
from .algebra.special import chi_tilde, hua_poly
from .catalog import PointCH, c_omega, make_domain, require_interior, volume_coefficient
from .classify import ClassificationVerdict, a2_constancy, default_sweep
from .errors import CartanHartogsError
from .kernel import (
    KernelParams,
    a1_a2_closed,
    epsilon_at,
    epsilon_coefficients,
    fiber_ratio,
)
from .verify.suite import run_suite, suite_names

PROG = "cartan-hartogs"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _point(text: str) -> PointCH:
    try:
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError
        return PointCH.from_json(data)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"--point expects JSON like {{\"z\": [...], \"w\": [...]}}, got {text!r}") from None


def _domain_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--type", dest="kind", required=required, help="I, II, III, IV, V16 or VI27")
    p.add_argument("--m", type=int, help="rows (type I)")
    p.add_argument("--n", type=int, help="size parameter")


def _kernel_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mu", type=_rational, help="fiber exponent; defaults to p/(d+1)")
    p.add_argument("--d0", type=int, default=1, help="fiber dimension (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="rank, multiplicities, dimension and genus (JSON)")
    _domain_flags(p)
    p.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")

    p = sub.add_parser("hua", help="Hua polynomial and volume data")
    _domain_flags(p)
    p.add_argument("--mu", type=_rational, help="also print the shifted polynomial hua(mu x - p)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("epsilon", help="epsilon function at a point or fiber ratio")
    _domain_flags(p)
    _kernel_flags(p)
    p.add_argument("--alpha", type=_rational, required=True)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--point", type=_point, help='JSON point, e.g. {"z": ["1/2"], "w": ["1/4"]}')
    where.add_argument("--X", dest="X", type=_rational, help="fiber ratio 1 - |w|^2/N^mu in (0, 1]")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("coeffs", help="expansion coefficients a_j as polynomials in X")
    _domain_flags(p)
    _kernel_flags(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="constancy of a_1 and a_2")
    _domain_flags(p, required=False)
    p.add_argument("--mu", type=_rational, help="defaults to p/(d+1)")
    p.add_argument("--sweep-max-dim", type=int, help="sweep the catalog up to this dimension")
    p.add_argument("--workers", type=int, help="sweep threads")
    p.add_argument("--json", action="store_true", help="one JSON verdict per line")

    p = sub.add_parser("verify", help="run the numerical and series oracles")
    p.add_argument("--suite", default="all", choices=suite_names())
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, help="threads (default from CARTAN_HARTOGS_THREADS)")
    p.add_argument("--json", action="store_true")
    return parser


def _spec(args):
    if args.kind is None:
        raise UsageError("--type is required")
    kind = args.kind.upper()
    if kind == "I":
        if args.m is None or args.n is None:
            raise UsageError("type I needs --m and --n")
        params = (args.m, args.n)
    elif kind in ("II", "III", "IV"):
        if args.n is None:
            raise UsageError(f"type {kind} needs --n")
        if args.m is not None:
            raise UsageError(f"type {kind} takes no --m")
        params = (args.n,)
    else:
        if args.m is not None or args.n is not None:
            raise UsageError(f"type {args.kind} takes no size parameters")
        params = ()
    return make_domain(kind, params)


def _mu(args, spec) -> tuple[Fraction, bool]:
    if args.mu is None:
        return Fraction(spec.p, spec.d + 1), True
    if args.mu <= 0:
        raise UsageError("--mu must be positive")
    return args.mu, False


def _d0(args) -> int:
    if args.d0 < 1:
        raise UsageError("--d0 must be a positive integer")
    return args.d0


def _num(value) -> Any:
    if isinstance(value, (int, Fraction)):
        return fraction_to_str(Fraction(value))
    return value


def _emit(obj: Any) -> None:
    print(json.dumps(obj, sort_keys=False))


def _table(rows: Sequence[Sequence[Any]], header: Sequence[str]) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def cmd_invariants(args) -> int:
    _emit(_spec(args).to_json())
    return 0


def cmd_hua(args) -> int:
    spec = _spec(args)
    chi = hua_poly(spec)
    out: dict[str, Any] = {
        "spec": spec.to_json(),
        "hua": chi.to_json(),
        "hua_at_0": _num(chi(0)),
        "volume_over_pi_d": _num(volume_coefficient(spec)) if spec.is_classical else None,
        "c_omega": _num(c_omega(spec)) if spec.is_classical else None,
    }
    if args.mu is not None:
        out["mu"] = _num(args.mu)
        out["shifted"] = chi_tilde(spec, args.mu).to_json()
    if args.json:
        _emit(out)
        return 0
    print(f"{spec.label}: r={spec.r} a={spec.a} b={spec.b} d={spec.d} p={spec.p}")
    print(f"hua(s) = {chi.format('s')}")
    print(f"hua(0) = {chi(0)}")
    if spec.is_classical:
        print(f"C = {c_omega(spec)}, vol / pi^{spec.d} = {volume_coefficient(spec)}")
    if args.mu is not None:
        print(f"hua({args.mu} x - {spec.p}) = {chi_tilde(spec, args.mu).format('x')}")
    return 0


def cmd_epsilon(args) -> int:
    spec = _spec(args)
    mu, default_mu = _mu(args, spec)
    d0 = _d0(args)
    params = KernelParams(spec, mu, d0, args.alpha)
    if args.point is not None:
        pt = args.point
        if len(pt.z) != spec.d or pt.d0 != d0:
            raise UsageError(f"--point needs {spec.d} base and {d0} fiber coordinates")
        require_interior(spec, mu, pt)
        X = fiber_ratio(spec, mu, pt)
    else:
        X = args.X
        if not 0 < X <= 1:
            raise UsageError("--X must lie in (0, 1]")
    value = epsilon_at(spec, mu, d0, params.alpha, X)
    expansion = epsilon_coefficients(spec, mu, d0)
    out = {
        "spec": spec.to_json(),
        "mu": _num(mu),
        "mu_default": default_mu,
        "d0": d0,
        "alpha": _num(params.alpha),
        "admissible": params.admissible,
        "X": _num(X),
        "epsilon": _num(value),
        "expansion": expansion.to_json(),
    }
    if not params.admissible:
        print(
            f"{PROG}: warning: alpha = {params.alpha} does not exceed "
            f"{params.threshold}; value is the algebraic continuation",
            file=sys.stderr,
        )
    if args.json:
        _emit(out)
        return 0
    note = " (default p/(d+1))" if default_mu else ""
    print(f"{spec.label}, mu={mu}{note}, d0={d0}, alpha={params.alpha}")
    print(f"X = {X}")
    print(f"epsilon = {value}")
    return 0


def cmd_coeffs(args) -> int:
    spec = _spec(args)
    mu, default_mu = _mu(args, spec)
    d0 = _d0(args)
    expansion = epsilon_coefficients(spec, mu, d0)
    a1, a2 = a1_a2_closed(spec, mu, d0)
    out = {
        "spec": spec.to_json(),
        "mu": _num(mu),
        "mu_default": default_mu,
        "d0": d0,
        "expansion": expansion.to_json(),
        "a1_constant": a1.is_constant(),
        "a2_constant": a2.is_constant(),
    }
    if args.json:
        _emit(out)
        return 0
    note = " (default p/(d+1))" if default_mu else ""
    print(f"{spec.label}, mu={mu}{note}, d0={d0}")
    print("epsilon = sum_j a_j(X) alpha^(n - j), n = d + d0")
    print(_table([(j, a.format("X")) for j, a in enumerate(expansion.coeffs)], ("j", "a_j")))
    return 0


def _verdict_row(v: ClassificationVerdict) -> tuple:
    factored = "-" if v.factored is None else str(v.factored)
    return (
        v.spec.label,
        v.spec.d,
        v.spec.p,
        str(v.mu),
        str(v.mu_star),
        "yes" if v.a1_constant else "no",
        "yes" if v.a2_constant else "no",
        str(v.residual),
        factored,
    )


def cmd_classify(args) -> int:
    if args.sweep_max_dim is not None:
        if args.kind is not None or args.m is not None or args.n is not None:
            raise UsageError("--sweep-max-dim excludes --type/--m/--n")
        if args.sweep_max_dim < 1:
            raise UsageError("--sweep-max-dim must be positive")
        if args.mu is not None and args.mu <= 0:
            raise UsageError("--mu must be positive")
        verdicts = default_sweep(args.sweep_max_dim, mu=args.mu, workers=args.workers)
    else:
        spec = _spec(args)
        mu, _ = _mu(args, spec)
        verdicts = [a2_constancy(spec, mu)]
    if args.json:
        for v in verdicts:
            _emit(v.to_json())
        return 0
    header = ("domain", "d", "p", "mu", "mu*", "a1 const", "a2 const", "residual", "factored")
    print(_table([_verdict_row(v) for v in verdicts], header))
    return 0


def cmd_verify(args) -> int:
    if args.seed < 0 or args.seed >= 1 << 64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    if args.workers is not None and args.workers < 1:
        raise UsageError("--workers must be positive")
    reports = run_suite(args.suite, args.seed, args.workers)
    ok = all(r.passed for r in reports)
    if args.json:
        _emit([r.to_json() for r in reports])
    else:
        for r in reports:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  err={r.error:.2e}  {r.detail}".rstrip())
        print(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
    return 0 if ok else 1


COMMANDS = {
    "invariants": cmd_invariants,
    "hua": cmd_hua,
    "epsilon": cmd_epsilon,
    "coeffs": cmd_coeffs,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def _usage(message: str) -> int:
    print(f"{PROG}: error: {message}", file=sys.stderr)
    return 2


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _usage(str(exc))
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return _usage(str(exc))
    except (CartanHartogsError, ValueError) as exc:
        return _usage(str(exc).splitlines()[0] if str(exc) else type(exc).__name__)


def main() -> None:
    sys.exit(run())
