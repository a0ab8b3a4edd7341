"""Integers of cyclotomic fields in the power basis.

An element of Z[zeta_N] is stored as its coordinate vector with respect to
1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th cyclotomic
polynomial. The representation is canonical, so equality is coordinate
equality.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Sequence


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials (low-degree-first), den monic.
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d of n.
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def reduce_mod_cyclotomic(coeffs: Sequence[int], n: int) -> tuple[int, ...]:
    """Reduce an integer polynomial in zeta modulo Phi_n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        top = c[i]
        if top:
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    c[base + j] -= top * phi[j]
    c = c[:deg]
    c.extend([0] * (deg - len(c)))
    return tuple(c)


@lru_cache(maxsize=None)
def _zeta_power(n: int, k: int) -> tuple[int, ...]:
    k %= n
    return reduce_mod_cyclotomic([0] * k + [1], n)


class CycInt:
    """Element of the ring of integers of Q(zeta_N)."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Sequence[int]):
        if level < 1:
            raise ValueError("level must be positive")
        phi = euler_phi(level)
        if len(coeffs) != phi:
            coeffs = reduce_mod_cyclotomic(coeffs, level)
        self.level = level
        self.coeffs = tuple(int(c) for c in coeffs)

    @classmethod
    def from_int(cls, level: int, value: int) -> CycInt:
        return cls(level, (value,) + (0,) * (euler_phi(level) - 1))

    @classmethod
    def zeta(cls, level: int, k: int = 1) -> CycInt:
        """zeta_level ** k."""
        return cls(level, _zeta_power(level, k))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.level != self.level:
                raise ValueError("level mismatch")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.level, other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycInt(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.level, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycInt(self.level, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycInt(self.level, mul_coords(self.coeffs, other.coeffs, self.level))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CycInt.from_int(self.level, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, s: int) -> CycInt:
        """Apply the automorphism zeta -> zeta^s, gcd(s, level) = 1."""
        n = self.level
        if gcd(s, n) != 1:
            raise ValueError(f"{s} is not a unit modulo {n}")
        acc = [0] * euler_phi(n)
        for k, c in enumerate(self.coeffs):
            if c:
                for j, z in enumerate(_zeta_power(n, k * s)):
                    acc[j] += c * z
        return CycInt(n, acc)

    def embed(self, level: int) -> CycInt:
        """Image in Z[zeta_level] for a multiple level of self.level."""
        if level % self.level:
            raise ValueError("target level must be a multiple")
        step = level // self.level
        acc = [0] * euler_phi(level)
        for k, c in enumerate(self.coeffs):
            if c:
                for j, z in enumerate(_zeta_power(level, k * step)):
                    acc[j] += c * z
        return CycInt(level, acc)

    def __repr__(self):
        return f"CycInt({self.level}, {list(self.coeffs)})"


def mul_coords(a: Sequence[int], b: Sequence[int], n: int) -> tuple[int, ...]:
    """Product of two coordinate vectors in Z[zeta_n]."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    return reduce_mod_cyclotomic(prod, n)
