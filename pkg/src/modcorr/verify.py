"""Cross-verification suites run by ``modcorr verify``."""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import gcd, isqrt
from typing import Callable

from .intersect import (
    intersection_eisenstein,
    intersection_gamma0,
    intersection_gamma0_Ap,
    intersection_hurwitz,
)
from .modpoly import ModPoly, psi_polynomial
from .oracle import oracle_intersection
from .quadforms import (
    PRIME_LEVELS,
    HM_prime,
    Ap,
    Ap_closed_form,
    hurwitz_H,
    hurwitz_H_by_conductor,
    ratio_closed_form,
)

SUITES = ("table2", "hurwitz", "prop33", "thm13", "oracle")


@dataclass
class Check:
    id: str
    fn: Callable[[], tuple[object, object]]


@dataclass
class CheckResult:
    id: str
    status: str
    expected: str
    actual: str
    seconds: float

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "seconds": round(self.seconds, 3),
        }


@dataclass
class VerifyReport:
    suite: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "status": "pass" if self.ok else "fail",
            "checks": [r.as_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1)

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            line = f"{r.status.upper()} {r.id} ({r.seconds:.2f}s)"
            if r.status != "pass":
                line += f" expected={r.expected} actual={r.actual}"
            lines.append(line)
        lines.append(f"{self.suite}: {'pass' if self.ok else 'fail'} ({len(self.results)} checks)")
        return "\n".join(lines)


def reference_rows() -> list[ModPoly]:
    """Published Psi rows shipped with the package."""
    text = resources.files("modcorr").joinpath("data/reference_psi.json").read_text("utf-8")
    return [ModPoly.from_json(json.dumps(row)) for row in json.loads(text)]


def _summ(terms: dict) -> str:
    return f"{len(terms)} terms"


def _diff(a: dict, b: dict) -> str:
    keys = sorted(set(a) | set(b), reverse=True)
    bad = [k for k in keys if a.get(k) != b.get(k)]
    return f"{len(bad)} differing terms, first {bad[:3]}"


def _reference_row_checks() -> list[Check]:
    out = []
    for row in reference_rows():
        def fn(row=row):
            got = psi_polynomial(row.M, row.N).terms
            if got == row.terms:
                return _summ(row.terms), _summ(got)
            return _summ(row.terms), _diff(row.terms, got)
        out.append(Check(f"psi M={row.M} N={row.N}", fn))
    return out


def _valid_D(limit: int):
    return [D for D in range(3, limit + 1) if D % 4 in (0, 3)]


def _hurwitz_checks(bound: int = 2000) -> list[Check]:
    def conductor_sum():
        bad = [D for D in _valid_D(bound) if hurwitz_H(D) != hurwitz_H_by_conductor(D)]
        return [], bad

    checks = [Check(f"H = sum over conductors, D <= {bound}", conductor_sum)]
    for (N1, N2), value in {(1, 2): 4, (2, 3): 18}.items():
        checks.append(Check(f"hurwitz N1={N1} N2={N2}", lambda N1=N1, N2=N2, v=value: (v, intersection_hurwitz(N1, N2))))
    checks.append(Check("hurwitz = gamma0 at M=1, N <= 8", _hurwitz_degeneration))
    return checks


def _hurwitz_degeneration():
    bad = []
    for N1 in range(1, 9):
        for N2 in range(N1, 9):
            if isqrt(N1 * N2) ** 2 != N1 * N2 and intersection_hurwitz(N1, N2) != intersection_gamma0(1, N1, N2):
                bad.append((N1, N2))
    return [], bad


def _divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


def class_identity_failures(p: int, bound: int) -> list[tuple[int, int]]:
    """(D, e) where sum d H^p(D/d^2) differs from A^p(D) sum d H(D/d^2)."""
    bad = []
    for D in _valid_D(bound):
        h = hurwitz_H(D)
        if h == 0:
            continue
        a = Ap(p, D)
        e = 1
        while e * e <= D:
            if D % (e * e) == 0 and e % p:
                ds = [d for d in _divisors(e) if (D // (d * d)) % 4 in (0, 3)]
                lhs = sum((d * HM_prime(p, D // (d * d)) for d in ds), Fraction(0))
                rhs = a * sum((d * hurwitz_H(D // (d * d)) for d in ds), Fraction(0))
                if lhs != rhs:
                    bad.append((D, e))
            e += 1
    return bad


def closed_form_failures(p: int, bound: int) -> list[int]:
    """D where the conductor closed forms disagree with enumeration."""
    bad = []
    for D in _valid_D(bound):
        h = hurwitz_H(D)
        if h == 0:
            continue
        if D % (p * p) == 0:
            small = D // (p * p)
            enum = (hurwitz_H(small) if small % 4 in (0, 3) else 0) / h
            if ratio_closed_form(p, D) != enum:
                bad.append(D)
                continue
        if Ap_closed_form(p, D) != Ap(p, D):
            bad.append(D)
    return bad


def _identity_checks(bound: int = 500) -> list[Check]:
    checks = [Check(f"identity p={p} D <= {bound}", lambda p=p: ([], class_identity_failures(p, bound))) for p in PRIME_LEVELS]
    checks += [
        Check(f"closed form p={p} D <= 2000", lambda p=p: ([], closed_form_failures(p, 2000)))
        for p in PRIME_LEVELS
    ]
    return checks


def route_grid(max_n: int = 10):
    for p in PRIME_LEVELS:
        for N1 in range(1, max_n + 1):
            for N2 in range(N1, max_n + 1):
                if gcd(N1 * N2, p) == 1 and isqrt(N1 * N2) ** 2 != N1 * N2:
                    yield p, N1, N2


def route_failures(max_n: int = 10) -> list[tuple]:
    bad = []
    for p, N1, N2 in route_grid(max_n):
        vals = (intersection_gamma0(p, N1, N2), intersection_gamma0_Ap(p, N1, N2), intersection_eisenstein(p, N1, N2))
        if len(set(vals)) != 1:
            bad.append((p, N1, N2) + vals)
    return bad


def _route_checks() -> list[Check]:
    return [Check("routes agree, p prime, N1 <= N2 <= 10", lambda: ([], route_failures()))]


def _oracle_checks() -> list[Check]:
    return [
        Check("oracle M=1 N1=2 N2=3", lambda: (intersection_hurwitz(2, 3), oracle_intersection(1, 2, 3))),
        Check("oracle M=5 N1=2 N2=3", lambda: (intersection_gamma0(5, 2, 3), oracle_intersection(5, 2, 3))),
    ]


_BUILDERS = {
    "table2": _reference_row_checks,
    "hurwitz": _hurwitz_checks,
    "prop33": _identity_checks,
    "thm13": _route_checks,
    "oracle": _oracle_checks,
}


def _run(check: Check) -> CheckResult:
    t = time.perf_counter()
    try:
        expected, actual = check.fn()
        status = "pass" if expected == actual else "fail"
    except Exception as exc:  # a crashing check is a failed check
        expected, actual, status = "no error", f"{type(exc).__name__}: {exc}", "fail"
    return CheckResult(check.id, status, str(expected), str(actual), time.perf_counter() - t)


def run_suite(suite: str, threads: int = 1) -> VerifyReport:
    if suite == "all":
        names = SUITES
    elif suite in _BUILDERS:
        names = (suite,)
    else:
        raise KeyError(suite)
    report = VerifyReport(suite)
    checks = [c for name in names for c in _BUILDERS[name]()]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            report.results = list(pool.map(_run, checks))
    else:
        report.results = [_run(c) for c in checks]
    return report
