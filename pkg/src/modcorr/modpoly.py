"""Modular polynomials Psi_N and Phi_N for Gamma_0(M) of genus zero.

Psi_N(X, t) is built as prod (X - t(A tau)) over the primitive upper
triangular matrices A = (a b; 0 d) of determinant N. Each coefficient of the
product is a Gamma_0(M)-invariant series in q, which ``pole_reduce``
rewrites as an integer polynomial in the Hauptmodul t.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Iterable

from .qseries import GENUS_ZERO_LEVELS, Series, conjugate_series, hauptmodul_series, j_series

DEFAULT_GUARD = 8


class PrecisionError(ArithmeticError):
    """The series precision was not enough to certify a polynomial identity."""


class IntegralityError(ArithmeticError):
    """A symmetric function of conjugates failed to be a rational q-series."""


class CacheError(ValueError):
    """A cache file is corrupt or does not describe the requested polynomial."""


@dataclass(frozen=True, order=True)
class UTRep:
    """Upper triangular matrix (a b; 0 d)."""

    a: int
    b: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d

    @property
    def primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.d) == 1

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.d)


def matrix_reps(N: int, primitive_only: bool = False) -> list[UTRep]:
    """(a b; 0 d) with a d = N and 0 <= b < d."""
    if N < 1:
        raise ValueError("N must be positive")
    reps = []
    for a in range(1, N + 1):
        if N % a:
            continue
        d = N // a
        for b in range(d):
            r = UTRep(a, b, d)
            if not primitive_only or r.primitive:
                reps.append(r)
    return reps


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def index_gamma0(N: int) -> int:
    """[SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)."""
    if N < 1:
        raise ValueError("N must be positive")
    idx = N
    for p in prime_factors(N):
        idx = idx // p * (p + 1)
    return idx


def required_truncation(M: int, N: int, guard: int = DEFAULT_GUARD) -> int:
    """Exclusive bound, in units of u = q^(1/N), for the conjugate series."""
    if gcd(M, N) != 1:
        raise ValueError(f"gcd(M, N) = gcd({M}, {N}) != 1")
    return sum(r.a ** 2 for r in matrix_reps(N, True)) + N * guard


def pole_reduce(k: Series, t: Series) -> list[int]:
    """Integer polynomial p with k = p(t) to the known precision of k.

    Returns coefficients low degree first. The most negative term of k is
    repeatedly cancelled by a multiple of a power of t = q^-1 + O(1); the
    remainder must then vanish on the whole window 1 <= e < trunc.
    """
    if k.level != 1 or k.denom != 1:
        raise ValueError("k must be an integer q-series")
    if t.terms.get(-1) != 1 or min(t.terms) != -1:
        raise ValueError("t must have the form q^-1 + O(1)")
    if k.trunc is not None and k.trunc <= 1:
        raise PrecisionError("no positive exponents are known; cannot certify the reduction")
    top = max(0, -min(k.terms)) if k.terms else 0
    # t^r is known one term less far than t^(r-1); t^top must reach k.trunc.
    need = (k.trunc if k.trunc is not None else 1) + max(top - 1, 0)
    if t.trunc is not None and t.trunc < need:
        raise PrecisionError(f"t is known below q^{t.trunc}, need q^{need}")
    t = t.truncate(need)
    powers = [Series.one().truncate(need)]
    for _ in range(top):
        powers.append(powers[-1] * t)
    coeffs = [0] * (top + 1)
    rem = k
    for r in range(top, 0, -1):
        a = rem.terms.get(-r, 0)
        if a:
            coeffs[r] = a
            rem = rem - powers[r].scale(a)
        if any(e < -r + 1 for e in rem.terms):
            raise PrecisionError("pole cancellation failed")
    c0 = rem.terms.get(0, 0)
    coeffs[0] = c0
    rem = rem - c0
    if rem.trunc is not None and rem.trunc <= 1:
        raise PrecisionError("not enough precision to verify the remainder")
    if rem.terms:
        e = min(rem.terms)
        raise PrecisionError(f"insufficient precision: remainder has q^{e} coefficient {rem.terms[e]}")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass
class ModPoly:
    """Bivariate integer polynomial sum c_ij X^i Y^j attached to (M, N)."""

    M: int
    N: int
    kind: str
    terms: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("psi", "phi"):
            raise ValueError(f"unknown kind {self.kind!r}")
        self.terms = {k: v for k, v in self.terms.items() if v}

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def is_symmetric(self) -> bool:
        """Psi(X, Y) == Psi(Y, X) as term maps."""
        return all(self.terms.get((j, i)) == c for (i, j), c in self.terms.items())

    def is_antisymmetric(self) -> bool:
        return all(self.terms.get((j, i)) == -c for (i, j), c in self.terms.items())

    def max_coeff(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def evaluate_series(self, x: Series, y: Series) -> Series:
        """Psi(x, y) for series arguments (Horner in X)."""
        by_i: dict[int, dict[int, int]] = {}
        for (i, j), c in self.terms.items():
            by_i.setdefault(i, {})[j] = c
        ypows = [Series.one()]
        for _ in range(self.deg_y()):
            ypows.append(ypows[-1] * y)
        total = None
        for i in range(self.deg_x(), -1, -1):
            row = by_i.get(i, {})
            coef = Series({}, None)
            for j, c in row.items():
                coef = coef + ypows[j].scale(c)
            total = coef if total is None else total * x + coef
        return total

    def __mul__(self, other: ModPoly) -> ModPoly:
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + c * d
        return ModPoly(self.M, self.N * other.N, "phi", out)

    def to_json(self) -> str:
        rows = [[i, j, str(c)] for (i, j), c in sorted(self.terms.items(), reverse=True)]
        return json.dumps({"M": self.M, "N": self.N, "kind": self.kind, "terms": rows}) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ModPoly:
        try:
            data = json.loads(text)
            terms = {}
            for i, j, c in data["terms"]:
                if not isinstance(i, int) or not isinstance(j, int) or not isinstance(c, str):
                    raise CacheError("terms must be [int, int, decimal string]")
                terms[(i, j)] = int(c)
            return cls(int(data["M"]), int(data["N"]), data["kind"], terms)
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            if isinstance(exc, CacheError):
                raise
            raise CacheError(f"corrupt modular polynomial file: {exc}") from exc

    def pretty(self) -> str:
        def mono(i, j):
            parts = []
            if i:
                parts.append("X" if i == 1 else f"X^{i}")
            if j:
                parts.append("Y" if j == 1 else f"Y^{j}")
            return "*".join(parts)

        out = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            m = mono(i, j)
            if m and abs(c) == 1:
                s = m
            elif m:
                s = f"{abs(c)}*{m}"
            else:
                s = str(abs(c))
            out.append(("- " if c < 0 else "+ ") + s)
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[1:] if text else "0"


def _hauptmodul(M: int, order: int) -> Series:
    return j_series(order) if M == 1 else hauptmodul_series(M, order)


def _check_level(M: int, N: int):
    if M != 1 and M not in GENUS_ZERO_LEVELS:
        raise ValueError(f"level {M} is not a supported genus-zero level")
    if N < 1:
        raise ValueError("N must be positive")
    if gcd(M, N) != 1:
        raise ValueError(f"gcd(M, N) = gcd({M}, {N}) != 1")


def _build_psi(M: int, N: int, guard: int) -> ModPoly:
    reps = matrix_reps(N, primitive_only=True)
    T = required_truncation(M, N, guard)
    t = _hauptmodul(M, T + 1)
    conjugates = [conjugate_series(t.truncate(-(-T // (r.a * r.a))), r.as_tuple(), N) for r in reps]
    # Elementary symmetric accumulation of prod (X - s): coeffs[i] multiplies X^(n - i).
    coeffs: list[Series] = [Series.one(N, N)]
    for s in conjugates:
        nxt = coeffs + [None]
        for i in range(len(coeffs), 0, -1):
            term = -(s * coeffs[i - 1])
            nxt[i] = term if nxt[i] is None else nxt[i] + term
        coeffs = nxt
    n = len(reps)
    tq = t
    terms: dict[tuple[int, int], int] = {}
    for i, k in enumerate(coeffs):
        if not k.is_rational_integral():
            raise IntegralityError(f"coefficient of X^{n - i} has irrational cyclotomic part")
        try:
            kq = k.to_integer_series().reduce_denom(1)
        except ValueError as exc:
            raise IntegralityError(f"coefficient of X^{n - i} is not a series in q") from exc
        for j, c in enumerate(pole_reduce(kq, tq)):
            if c:
                terms[(n - i, j)] = c
    return ModPoly(M, N, "psi", terms)


@lru_cache(maxsize=None)
def _psi_cached(M: int, N: int, guard: int) -> ModPoly:
    try:
        poly = _build_psi(M, N, guard)
    except PrecisionError:
        poly = _build_psi(M, N, 2 * guard)
    n = index_gamma0(N)
    # Psi_1 = X - Y is the one antisymmetric case.
    sign = -1 if N == 1 else 1
    if not (poly.is_antisymmetric() if N == 1 else poly.is_symmetric()):
        raise IntegralityError(f"Psi_{N} for level {M} is not symmetric")
    if poly.deg_x() != n or poly.deg_y() != n or poly.terms.get((n, 0)) != 1 or poly.terms.get((0, n)) != sign:
        raise IntegralityError(f"Psi_{N} for level {M} has unexpected degree")
    return poly


def psi_polynomial(M: int, N: int, guard: int = DEFAULT_GUARD) -> ModPoly:
    """Psi_N^{Gamma_0(M)} in Z[X, Y]; M = 1 gives the classical j-polynomial."""
    _check_level(M, N)
    p = _psi_cached(M, N, guard)
    return ModPoly(p.M, p.N, p.kind, dict(p.terms))


def square_divisor_indices(M: int, N: int) -> list[int]:
    """N / N1^2 over N1^2 | N with gcd(M, N1) = 1, largest first."""
    out = []
    n1 = 1
    while n1 * n1 <= N:
        if N % (n1 * n1) == 0 and gcd(M, n1) == 1:
            out.append(N // (n1 * n1))
        n1 += 1
    return out


def phi_polynomial(M: int, N: int, guard: int = DEFAULT_GUARD) -> ModPoly:
    """Phi_N = prod_{N1^2 | N, (M, N1) = 1} Psi_{N / N1^2}."""
    _check_level(M, N)
    result = None
    for n in square_divisor_indices(M, N):
        psi = psi_polynomial(M, n, guard)
        result = psi if result is None else result * psi
    return ModPoly(M, N, "phi", dict(result.terms))


def modular_polynomial(M: int, N: int, kind: str = "psi", guard: int = DEFAULT_GUARD) -> ModPoly:
    if kind == "psi":
        return psi_polynomial(M, N, guard)
    if kind == "phi":
        return phi_polynomial(M, N, guard)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# disk cache

def cache_path(cache_dir: str | os.PathLike, M: int, N: int, kind: str) -> Path:
    return Path(cache_dir) / f"{kind}_M{M}_N{N}.json"


def cache_store(poly: ModPoly, cache_dir: str | os.PathLike) -> Path:
    """Write atomically (temp file + rename) and return the path."""
    path = cache_path(cache_dir, poly.M, poly.N, poly.kind)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(poly.to_json())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_load(cache_dir: str | os.PathLike, M: int, N: int, kind: str) -> ModPoly:
    path = cache_path(cache_dir, M, N, kind)
    return load_file(path, M, N, kind)


def load_file(path: str | os.PathLike, M: int, N: int, kind: str) -> ModPoly:
    text = Path(path).read_text(encoding="utf-8")
    poly = ModPoly.from_json(text)
    if (poly.M, poly.N, poly.kind) != (M, N, kind):
        raise CacheError(f"metadata mismatch: file holds {poly.kind} M={poly.M} N={poly.N}, "
                         f"requested {kind} M={M} N={N}")
    return poly


def cached_polynomial(M: int, N: int, kind: str, cache_dir, guard: int = DEFAULT_GUARD) -> tuple[ModPoly, bool]:
    """(polynomial, hit) -- load from the cache or compute and store."""
    path = cache_path(cache_dir, M, N, kind)
    if path.exists():
        return load_file(path, M, N, kind), True
    poly = modular_polynomial(M, N, kind, guard)
    cache_store(poly, cache_dir)
    return poly, False
