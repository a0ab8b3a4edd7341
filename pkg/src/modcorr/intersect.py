"""Intersection numbers of the modular correspondences T_N1, T_N2.

Three formula routes are provided: the Gamma_0(M) class-number sum, its
prime-level form through the correction factor A^p, and the sum of Siegel
Eisenstein coefficients C(T) over half-integral T with diagonal (N1, N2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .qseries import GENUS_ZERO_LEVELS
from .quadforms import HM, PRIME_LEVELS, Ap, hurwitz_H


class NonProperError(ValueError):
    """T_N1 and T_N2 share a component (N1 N2 is a square)."""


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _check_job(M: int, N1: int, N2: int):
    if M != 1 and M not in GENUS_ZERO_LEVELS:
        raise ValueError(f"level {M} is not a supported genus-zero level")
    if N1 < 1 or N2 < 1:
        raise ValueError("N1 and N2 must be positive")
    if gcd(N1, M) != 1 or gcd(N2, M) != 1:
        raise ValueError(f"N1 = {N1} and N2 = {N2} must be prime to M = {M}")


def is_proper(M: int, N1: int, N2: int) -> bool:
    """True iff N1 N2 is not a perfect square."""
    _check_job(M, N1, N2)
    n = N1 * N2
    return isqrt(n) ** 2 != n


def _require_proper(M, N1, N2):
    if not is_proper(M, N1, N2):
        raise NonProperError("non-proper: N1*N2 is a square")


def _to_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} = {value} is not an integer")
    return value.numerator


@dataclass(frozen=True)
class HalfIntT:
    """T = [[N1, x/2], [x/2, N2]]."""

    N1: int
    N2: int
    x: int

    @property
    def det2T(self) -> int:
        return 4 * self.N1 * self.N2 - self.x * self.x

    def is_positive_definite(self) -> bool:
        return self.N1 > 0 and self.det2T > 0

    def content(self) -> int:
        """Largest d with T/d half-integral."""
        return gcd(gcd(self.N1, self.N2), self.x)


def _x_range(N1: int, N2: int):
    n = 4 * N1 * N2
    r = isqrt(n - 1)
    return range(-r, r + 1)


def _inner_H(N1: int, N2: int, x: int) -> Fraction:
    D = 4 * N1 * N2 - x * x
    return sum((d * hurwitz_H(D // (d * d)) for d in _divisors(gcd(gcd(N1, N2), x))), Fraction(0))


def intersection_hurwitz(N1: int, N2: int) -> int:
    """sum_{t^2 < 4 N1 N2} sum_{d | (N1, N2, t)} d H((4 N1 N2 - t^2) / d^2)."""
    _require_proper(1, N1, N2)
    total = sum((_inner_H(N1, N2, t) for t in _x_range(N1, N2)), Fraction(0))
    return _to_int(total, f"(T_{N1} . T_{N2})")


def intersection_gamma0(M: int, N1: int, N2: int) -> int:
    """sum_x sum_{Z | (N1, N2, x)} Z H^M((4 N1 N2 - x^2) / Z^2).

    Composite M uses the orbit enumeration for H^M.
    """
    _require_proper(M, N1, N2)
    total = Fraction(0)
    for x in _x_range(N1, N2):
        D = 4 * N1 * N2 - x * x
        for Z in _divisors(gcd(gcd(N1, N2), x)):
            total += Z * HM(M, D // (Z * Z))
    return _to_int(total, f"(T_{N1} . T_{N2}) on X_0({M})")


def _require_prime(p: int):
    if p not in PRIME_LEVELS:
        raise ValueError(f"{p} is not a prime genus-zero level {PRIME_LEVELS}")


def intersection_gamma0_Ap(p: int, N1: int, N2: int) -> int:
    """sum_x A^p(4 N1 N2 - x^2) sum_{d | (N1, N2, x)} d H((4 N1 N2 - x^2) / d^2)."""
    _require_prime(p)
    _require_proper(p, N1, N2)
    total = Fraction(0)
    for x in _x_range(N1, N2):
        inner = _inner_H(N1, N2, x)
        if inner:
            total += Ap(p, 4 * N1 * N2 - x * x) * inner
    return _to_int(total, f"(T_{N1} . T_{N2}) on X_0({p})")


def eisenstein_C(T: HalfIntT) -> int:
    """C(T) = 288 sum_{d | T} d H(det(2T) / d^2)."""
    if not T.is_positive_definite():
        raise ValueError(f"{T} is not positive definite")
    D = T.det2T
    total = sum((d * hurwitz_H(D // (d * d)) for d in _divisors(T.content())), Fraction(0))
    return _to_int(288 * total, f"C({T})")


def intersection_eisenstein(p: int, N1: int, N2: int) -> int:
    """(1/288) sum A^p(det 2T) C(T) over T > 0 with diagonal (N1, N2)."""
    _require_prime(p)
    _require_proper(p, N1, N2)
    total = Fraction(0)
    for x in _x_range(N1, N2):
        T = HalfIntT(N1, N2, x)
        c = eisenstein_C(T)
        if c:
            total += Ap(p, T.det2T) * c
    return _to_int(total / 288, f"Eisenstein sum for ({p}, {N1}, {N2})")
