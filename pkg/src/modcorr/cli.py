"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 internal
inconsistency or failed verification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import intersect, modpoly, quadforms
from .oracle import NonProperIntersection, oracle_intersection
from .qseries import GENUS_ZERO_LEVELS, hauptmodul_series, j_series
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INCONSISTENT = 0, 1, 2, 3


class DomainError(Exception):
    pass


class Inconsistency(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    cache_dir: Path
    guard: int = modpoly.DEFAULT_GUARD
    threads: int = 1
    format: str = "json"

    def __post_init__(self):
        if self.guard < 1:
            raise DomainError("--guard must be at least 1")
        if self.threads < 1:
            raise DomainError("--threads must be at least 1")


def default_cache_dir() -> Path:
    env = os.environ.get("MODCORR_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "modcorr"


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(config: RunConfig, data: dict, text: str):
    if config.format == "json":
        print(json.dumps(data))
    else:
        print(text)


def _series_text(coeffs: list[tuple[int, int]], order: int) -> str:
    parts = []
    for e, c in coeffs:
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
        if mono and abs(c) == 1:
            s = mono
        elif mono:
            s = f"{abs(c)}*{mono}"
        else:
            s = str(abs(c))
        parts.append(("- " if c < 0 else "+ ") + s)
    parts.append(f"+ O(q^{order + 1})")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def cmd_hauptmodul(M: int, order: int, config: RunConfig) -> int:
    if M != 1 and M not in GENUS_ZERO_LEVELS:
        raise DomainError(f"unsupported level M = {M}; choose from 1, {', '.join(map(str, GENUS_ZERO_LEVELS))}")
    if order < 0:
        raise DomainError("--order must be nonnegative")
    t = j_series(order) if M == 1 else hauptmodul_series(M, order)
    coeffs = [(e, t.coeff(e)) for e in range(-1, order + 1) if t.coeff(e) or e == -1]
    if not any(e == 0 for e, _ in coeffs):
        coeffs.insert(1, (0, 0))
    data = {"M": M, "coeffs": [[e, str(c)] for e, c in coeffs]}
    _emit(config, data, _series_text([(e, c) for e, c in coeffs if c], order))
    return EXIT_OK


def cmd_modpoly(M: int, N: int, kind: str, config: RunConfig) -> int:
    try:
        poly, hit = modpoly.cached_polynomial(M, N, kind, config.cache_dir, guard=config.guard)
    except (modpoly.IntegralityError, modpoly.PrecisionError, modpoly.CacheError) as exc:
        raise Inconsistency(str(exc)) from exc
    path = modpoly.cache_path(config.cache_dir, M, N, kind)
    data = {
        "M": M,
        "N": N,
        "kind": kind,
        "degree": [poly.deg_x(), poly.deg_y()],
        "terms": len(poly.terms),
        "max_abs_coeff": str(poly.max_coeff()),
        "cache": "hit" if hit else "miss",
        "path": str(path),
    }
    text = (
        f"{'cache hit' if hit else 'computed'}: {path}\n"
        f"degree ({poly.deg_x()}, {poly.deg_y()}), {len(poly.terms)} terms, max |coefficient| {poly.max_coeff()}"
    )
    _emit(config, data, text)
    return EXIT_OK


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def cmd_classnum(kind: str, args, config: RunConfig) -> int:
    if kind == "h":
        _need(args, "D")
        value = quadforms.primitive_h(args.D)
    elif kind == "H":
        _need(args, "D")
        value = quadforms.hurwitz_H(args.D)
    elif kind == "HM":
        _need(args, "M", "D")
        if args.M != 1 and args.M not in GENUS_ZERO_LEVELS:
            raise DomainError(f"unsupported level M = {args.M}")
        value = quadforms.HM(args.M, args.D)
    elif kind == "Ap":
        _need(args, "p", "D")
        if args.p not in quadforms.PRIME_LEVELS:
            raise DomainError(f"p must be one of {quadforms.PRIME_LEVELS}")
        value = quadforms.Ap(args.p, args.D)
    else:
        _need(args, "p", "D")
        value = quadforms.chi(args.D, args.p)
    s = fmt_rational(value)
    _emit(config, {"kind": kind, "value": s}, s)
    return EXIT_OK


def _routes(M: int, method: str) -> list[str]:
    prime = M in quadforms.PRIME_LEVELS
    available = ["formula"]
    if prime:
        available += ["ap", "eisenstein"]
    if M == 1 or prime:
        available.append("oracle")
    if method == "all":
        return available
    if method not in available:
        raise DomainError(f"method {method!r} is not available for M = {M}")
    return [method]


def cmd_intersect(M: int, N1: int, N2: int, method: str, config: RunConfig) -> int:
    if not intersect.is_proper(M, N1, N2):
        raise DomainError("non-proper: N1*N2 is a square")
    values = {}
    for route in _routes(M, method):
        if route == "formula":
            values["formula"] = intersect.intersection_hurwitz(N1, N2) if M == 1 else intersect.intersection_gamma0(M, N1, N2)
        elif route == "ap":
            values["ap"] = intersect.intersection_gamma0_Ap(M, N1, N2)
        elif route == "eisenstein":
            values["eisenstein"] = intersect.intersection_eisenstein(M, N1, N2)
        else:
            values["oracle"] = oracle_intersection(M, N1, N2, guard=config.guard)
    agree = len(set(values.values())) == 1
    data = {"M": M, "N1": N1, "N2": N2, "values": values, "agree": agree}
    _emit(config, data, "\n".join(f"{k}: {v}" for k, v in values.items()))
    if not agree:
        print("routes disagree", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_verify(suite: str, config: RunConfig) -> int:
    report = run_suite(suite, threads=config.threads)
    if config.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return EXIT_OK if report.ok else EXIT_INCONSISTENT


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cache-dir", type=Path, default=None,
                        help="polynomial cache directory (MODCORR_CACHE_DIR takes precedence)")
    common.add_argument("--guard", type=int, default=modpoly.DEFAULT_GUARD, help="precision guard")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = _Parser(prog="modcorr", description="Modular polynomials, class numbers and intersection numbers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hauptmodul", parents=[common], help="q-expansion of the Hauptmodul")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("modpoly", parents=[common], help="build or load a modular polynomial")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--kind", choices=("psi", "phi"), default="psi")

    p = sub.add_parser("classnum", parents=[common], help="class numbers and characters")
    p.add_argument("--kind", choices=("h", "H", "HM", "Ap", "chi"), required=True)
    p.add_argument("--D", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--p", type=int)

    p = sub.add_parser("intersect", parents=[common], help="intersection number of T_N1 and T_N2")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N1", type=int, required=True)
    p.add_argument("--N2", type=int, required=True)
    p.add_argument("--method", choices=("formula", "ap", "eisenstein", "oracle", "all"), default="formula")

    p = sub.add_parser("verify", parents=[common], help="run a cross-verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        env = os.environ.get("MODCORR_CACHE_DIR")
        cache_dir = Path(env) if env else (args.cache_dir or default_cache_dir())
        config = RunConfig(cache_dir, args.guard, args.threads, args.format)
        if args.command == "hauptmodul":
            return cmd_hauptmodul(args.M, args.order, config)
        if args.command == "modpoly":
            return cmd_modpoly(args.M, args.N, args.kind, config)
        if args.command == "classnum":
            return cmd_classnum(args.kind, args, config)
        if args.command == "intersect":
            return cmd_intersect(args.M, args.N1, args.N2, args.method, config)
        return cmd_verify(args.suite, config)
    except UsageError as exc:
        print(f"modcorr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Inconsistency as exc:
        print(f"modcorr: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (DomainError, NonProperIntersection, intersect.NonProperError, ValueError, ZeroDivisionError) as exc:
        print(f"modcorr: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ArithmeticError as exc:
        print(f"modcorr: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
