"""Truncated Laurent series in q^(1/L) with coefficients in Z or Z[zeta_N].

Series are immutable. A series carries an exclusive exponent bound
``trunc`` (``None`` when the series is exact): every coefficient below it
is known exactly, nothing is known at or above it. Arithmetic propagates
the bound so that reported coefficients are always exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .cyclotomic import CycInt, euler_phi, reduce_mod_cyclotomic

__all__ = [
    "Series",
    "EtaQuotient",
    "ETA_QUOTIENTS",
    "GENUS_ZERO_LEVELS",
    "eta_unit_series",
    "eta_quotient_series",
    "hauptmodul_series",
    "j_series",
    "conjugate_series",
]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# Below this many coefficient products the schoolbook loop is cheaper than
# packing into big integers.
_KRONECKER_THRESHOLD = 48


def _pack(slots: Mapping[int, int], nslots: int, nb: int) -> int:
    pos = bytearray(nslots * nb)
    neg = bytearray(nslots * nb)
    for i, c in slots.items():
        if c > 0:
            pos[i * nb:(i + 1) * nb] = c.to_bytes(nb, "little")
        elif c < 0:
            neg[i * nb:(i + 1) * nb] = (-c).to_bytes(nb, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, nslots: int, nb: int) -> list[int]:
    half = 1 << (8 * nb - 1)
    bias = int.from_bytes((b"\x00" * (nb - 1) + b"\x80") * nslots, "little")
    raw = (value + bias).to_bytes(nslots * nb, "little")
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - half for i in range(nslots)]


def _coef_bits(terms, level: int) -> int:
    if level == 1:
        return max((abs(c).bit_length() for c in terms.values()), default=0)
    return max((abs(x).bit_length() for c in terms.values() for x in c), default=0)


def _mul_terms(a: dict, b: dict, level: int, bound) -> dict:
    """Product of two term maps, keeping exponents below ``bound``."""
    if not a or not b:
        return {}
    ea, eb = min(a), min(b)
    if bound is not None:
        a = {e: c for e, c in a.items() if e + eb < bound}
        b = {e: c for e, c in b.items() if e + ea < bound}
    phi = euler_phi(level)
    out: dict = {}
    if len(a) * len(b) * phi < _KRONECKER_THRESHOLD:
        if level == 1:
            for i, x in a.items():
                for j, y in b.items():
                    e = i + j
                    if bound is None or e < bound:
                        out[e] = out.get(e, 0) + x * y
        else:
            raw: dict = {}
            for i, x in a.items():
                for j, y in b.items():
                    e = i + j
                    if bound is not None and e >= bound:
                        continue
                    acc = raw.get(e)
                    if acc is None:
                        acc = raw[e] = [0] * (2 * phi - 1)
                    for s, xs in enumerate(x):
                        if xs:
                            for t, yt in enumerate(y):
                                if yt:
                                    acc[s + t] += xs * yt
            for e, acc in raw.items():
                out[e] = reduce_mod_cyclotomic(acc, level)
        return _clean(out, level)

    width = 1 if level == 1 else 2 * phi - 1
    la = max(a) - ea + 1
    lb = max(b) - eb + 1
    bits = _coef_bits(a, level) + _coef_bits(b, level) + (min(len(a), len(b)) * phi).bit_length() + 2
    nb = bits // 8 + 1
    nslots = (la + lb - 1) * width
    if level == 1:
        pa = {e - ea: c for e, c in a.items()}
        pb = {e - eb: c for e, c in b.items()}
    else:
        pa = {(e - ea) * width + k: x for e, c in a.items() for k, x in enumerate(c) if x}
        pb = {(e - eb) * width + k: x for e, c in b.items() for k, x in enumerate(c) if x}
    prod = _pack(pa, nslots, nb) * _pack(pb, nslots, nb)
    digits = _unpack(prod, nslots, nb)
    base = ea + eb
    if level == 1:
        for i, c in enumerate(digits):
            if c:
                e = base + i
                if bound is None or e < bound:
                    out[e] = c
    else:
        for i in range(la + lb - 1):
            chunk = digits[i * width:(i + 1) * width]
            if any(chunk):
                e = base + i
                if bound is None or e < bound:
                    out[e] = reduce_mod_cyclotomic(chunk, level)
    return _clean(out, level)


def _clean(terms: dict, level: int) -> dict:
    if level == 1:
        return {e: c for e, c in terms.items() if c}
    return {e: c for e, c in terms.items() if any(c)}


class Series:
    """Sparse truncated series sum c_e * q^(e/denom).

    ``terms`` maps exponent numerators to coefficients: Python ints when
    ``level == 1``, otherwise coordinate tuples in Z[zeta_level].
    """

    __slots__ = ("denom", "level", "terms", "trunc")

    def __init__(self, terms: Mapping | Iterable = (), trunc: int | None = None,
                 denom: int = 1, level: int = 1):
        if denom < 1 or level < 1:
            raise ValueError("denom and level must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        phi = euler_phi(level)
        clean = {}
        for e, c in items:
            e = int(e)
            if trunc is not None and e >= trunc:
                continue
            if level == 1:
                if isinstance(c, CycInt):
                    c = c.to_int()
                c = int(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            else:
                if isinstance(c, CycInt):
                    if c.level != level:
                        c = c.embed(level)
                    c = c.coeffs
                elif isinstance(c, int):
                    c = (c,) + (0,) * (phi - 1)
                elif len(c) != phi:
                    c = reduce_mod_cyclotomic(c, level)
                else:
                    c = tuple(int(x) for x in c)
                if e in clean:
                    c = tuple(x + y for x, y in zip(clean[e], c))
                clean[e] = c
        self.denom = denom
        self.level = level
        self.terms = _clean(clean, level)
        self.trunc = trunc

    @classmethod
    def _raw(cls, terms: dict, trunc, denom: int, level: int) -> Series:
        s = object.__new__(cls)
        s.denom, s.level, s.terms, s.trunc = denom, level, terms, trunc
        return s

    @classmethod
    def one(cls, denom: int = 1, level: int = 1) -> Series:
        return cls({0: 1}, None, denom, level)

    @classmethod
    def monomial(cls, exponent: int, coeff=1, denom: int = 1, level: int = 1) -> Series:
        return cls({exponent: coeff}, None, denom, level)

    # -- inspection -------------------------------------------------------

    def valuation(self):
        """Smallest stored exponent numerator (trunc for a known-zero series)."""
        if self.terms:
            return min(self.terms)
        return self.trunc

    def coeff(self, e: int):
        """Coefficient of q^(e/denom); CycInt when level > 1."""
        if self.trunc is not None and e >= self.trunc:
            raise ValueError(f"coefficient {e}/{self.denom} is beyond the truncation")
        if self.level == 1:
            return self.terms.get(e, 0)
        c = self.terms.get(e)
        return CycInt.from_int(self.level, 0) if c is None else CycInt(self.level, c)

    def items(self):
        """(exponent numerator, coefficient) pairs in ascending order."""
        return [(e, self.coeff(e)) for e in sorted(self.terms)]

    def is_rational_integral(self) -> bool:
        return self.level == 1 or all(not any(c[1:]) for c in self.terms.values())

    def __repr__(self):
        shown = ", ".join(f"{Fraction(e, self.denom)}: {c}" for e, c in sorted(self.terms.items())[:6])
        more = ", ..." if len(self.terms) > 6 else ""
        return f"Series({{{shown}{more}}}, trunc={self.trunc}, denom={self.denom}, level={self.level})"

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        a, b = _align(self, other)
        return a.terms == b.terms and a.trunc == b.trunc

    def __hash__(self):
        return hash((self.denom, self.level, tuple(sorted(self.terms.items())), self.trunc))

    # -- structural changes ------------------------------------------------

    def truncate(self, bound: int) -> Series:
        trunc = bound if self.trunc is None else min(bound, self.trunc)
        return Series._raw({e: c for e, c in self.terms.items() if e < trunc},
                           trunc, self.denom, self.level)

    def rescale(self, denom: int) -> Series:
        """Same series with exponents stored over a multiple denominator."""
        if denom % self.denom:
            raise ValueError("new denominator must be a multiple")
        k = denom // self.denom
        if k == 1:
            return self
        trunc = None if self.trunc is None else self.trunc * k
        return Series._raw({e * k: c for e, c in self.terms.items()}, trunc, denom, self.level)

    def to_level(self, level: int) -> Series:
        if level == self.level:
            return self
        if self.level != 1:
            return Series({e: CycInt(self.level, c).embed(level) for e, c in self.terms.items()},
                          self.trunc, self.denom, level)
        pad = (0,) * (euler_phi(level) - 1)
        return Series._raw({e: (c,) + pad for e, c in self.terms.items()}, self.trunc, self.denom, level)

    def to_integer_series(self) -> Series:
        """Drop the cyclotomic ring when every coefficient is rational."""
        if self.level == 1:
            return self
        if not self.is_rational_integral():
            raise ValueError("series has irrational cyclotomic coefficients")
        return Series._raw({e: c[0] for e, c in self.terms.items()}, self.trunc, self.denom, 1)

    def reduce_denom(self, denom: int) -> Series:
        """Re-express over a divisor of the denominator; exponents must allow it."""
        if self.denom % denom:
            raise ValueError("target denominator must divide the current one")
        k = self.denom // denom
        if any(e % k for e in self.terms):
            raise ValueError("exponents are not multiples of the requested step")
        trunc = None if self.trunc is None else -(-self.trunc // k)
        return Series._raw({e // k: c for e, c in self.terms.items()}, trunc, denom, self.level)

    def galois(self, s: int) -> Series:
        """Apply zeta -> zeta^s to every coefficient."""
        if self.level == 1:
            return self
        return Series({e: CycInt(self.level, c).galois(s) for e, c in self.terms.items()},
                      self.trunc, self.denom, self.level)

    def substitute_power(self, k: int) -> Series:
        """q -> q^k."""
        trunc = None if self.trunc is None else self.trunc * k
        return Series._raw({e * k: c for e, c in self.terms.items()}, trunc, self.denom, self.level)

    def shift(self, n: int) -> Series:
        """Multiply by q^(n/denom)."""
        trunc = None if self.trunc is None else self.trunc + n
        return Series._raw({e + n: c for e, c in self.terms.items()}, trunc, self.denom, self.level)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, CycInt)):
            return Series({0: other}, None, self.denom, self.level)
        return NotImplemented

    def __neg__(self):
        if self.level == 1:
            terms = {e: -c for e, c in self.terms.items()}
        else:
            terms = {e: tuple(-x for x in c) for e, c in self.terms.items()}
        return Series._raw(terms, self.trunc, self.denom, self.level)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = _align(self, other)
        trunc = _min_trunc(a.trunc, b.trunc)
        terms = {e: c for e, c in a.terms.items() if trunc is None or e < trunc}
        for e, c in b.terms.items():
            if trunc is not None and e >= trunc:
                continue
            if e in terms:
                if a.level == 1:
                    terms[e] = terms[e] + c
                else:
                    terms[e] = tuple(x + y for x, y in zip(terms[e], c))
            else:
                terms[e] = c
        return Series._raw(_clean(terms, a.level), trunc, a.denom, a.level)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Series:
        """Multiply every coefficient by an integer or CycInt."""
        if isinstance(c, int) and self.level == 1:
            if c == 0:
                return Series._raw({}, self.trunc, self.denom, 1)
            return Series._raw({e: x * c for e, x in self.terms.items()}, self.trunc, self.denom, 1)
        return self * Series({0: c}, None, self.denom, self.level if not isinstance(c, CycInt) else max(self.level, c.level))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other) if self.level == 1 else self * Series({0: other}, None, self.denom, self.level)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = _align(self, other)
        va, vb = a.valuation(), b.valuation()
        bounds = []
        if a.trunc is not None:
            bounds.append(a.trunc + vb if vb is not None else None)
        if b.trunc is not None:
            bounds.append(b.trunc + va if va is not None else None)
        bounds = [x for x in bounds if x is not None]
        trunc = min(bounds) if bounds else None
        terms = _mul_terms(a.terms, b.terms, a.level, trunc)
        return Series._raw(terms, trunc, a.denom, a.level)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Series:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Series.one(self.denom, self.level)
        base = self
        while True:
            if k & 1:
                result = result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    def inverse(self) -> Series:
        """Multiplicative inverse; the lowest coefficient must be +1 or -1."""
        if not self.terms:
            raise ZeroDivisionError("series is zero to known precision")
        v = min(self.terms)
        lead = self.terms[v]
        lead_int = lead if self.level == 1 else (lead[0] if not any(lead[1:]) else None)
        if lead_int not in (1, -1):
            raise ZeroDivisionError(f"lowest coefficient {lead!r} is not a unit")
        if self.trunc is None:
            if len(self.terms) == 1:
                return Series._raw({-v: lead}, None, self.denom, self.level)
            raise ValueError("inverse of an exact non-monomial series needs a truncation")
        n = self.trunc - v                # known relative precision
        rel = {e - v: c for e, c in self.terms.items()}
        phi = euler_phi(self.level)
        if self.level == 1:
            inv = [0] * n
            inv[0] = lead_int
            others = sorted((k, c) for k, c in rel.items() if k > 0)
            for m in range(1, n):
                acc = 0
                for k, c in others:
                    if k > m:
                        break
                    acc += c * inv[m - k]
                inv[m] = -acc * lead_int
            terms = {m - v: c for m, c in enumerate(inv) if c}
        else:
            zero = (0,) * phi
            inv = [zero] * n
            inv[0] = (lead_int,) + (0,) * (phi - 1)
            others = sorted((k, c) for k, c in rel.items() if k > 0)
            for m in range(1, n):
                acc = [0] * (2 * phi - 1)
                for k, c in others:
                    if k > m:
                        break
                    w = inv[m - k]
                    for s, x in enumerate(c):
                        if x:
                            for t, y in enumerate(w):
                                if y:
                                    acc[s + t] += x * y
                red = reduce_mod_cyclotomic(acc, self.level)
                inv[m] = tuple(-x * lead_int for x in red)
            terms = {m - v: c for m, c in enumerate(inv) if any(c)}
        return Series._raw(terms, self.trunc - 2 * v, self.denom, self.level)


def _align(a: Series, b: Series) -> tuple[Series, Series]:
    if a.denom != b.denom:
        L = _lcm(a.denom, b.denom)
        a, b = a.rescale(L), b.rescale(L)
    if a.level != b.level:
        if a.level == 1:
            a = a.to_level(b.level)
        elif b.level == 1:
            b = b.to_level(a.level)
        else:
            L = _lcm(a.level, b.level)
            a, b = a.to_level(L), b.to_level(L)
    return a, b


# ---------------------------------------------------------------------------
# eta products and Hauptmoduln

class EtaQuotient:
    """prod eta(m tau)^r as a list of (m, r) factors."""

    def __init__(self, factors: Iterable[tuple[int, int]]):
        self.factors = tuple((int(m), int(r)) for m, r in factors)
        if any(m < 1 or r == 0 for m, r in self.factors):
            raise ValueError("eta factors need m >= 1 and r != 0")

    @property
    def prefactor(self) -> Fraction:
        """Exponent of the q^(sum m r / 24) prefactor."""
        return Fraction(sum(m * r for m, r in self.factors), 24)

    def __repr__(self):
        return f"EtaQuotient({list(self.factors)})"


ETA_QUOTIENTS: dict[int, EtaQuotient] = {
    2: EtaQuotient([(1, 24), (2, -24)]),
    3: EtaQuotient([(1, 12), (3, -12)]),
    4: EtaQuotient([(1, 8), (4, -8)]),
    5: EtaQuotient([(1, 6), (5, -6)]),
    6: EtaQuotient([(1, 5), (3, 1), (2, -1), (6, -5)]),
    7: EtaQuotient([(1, 4), (7, -4)]),
    8: EtaQuotient([(1, 4), (4, 2), (2, -2), (8, -4)]),
    9: EtaQuotient([(1, 3), (9, -3)]),
    10: EtaQuotient([(1, 3), (5, 1), (2, -1), (10, -3)]),
    12: EtaQuotient([(1, 3), (4, 1), (6, 2), (2, -2), (3, -1), (12, -3)]),
    13: EtaQuotient([(1, 2), (13, -2)]),
    16: EtaQuotient([(1, 2), (8, 1), (2, -1), (16, -2)]),
    18: EtaQuotient([(1, 2), (6, 1), (9, 1), (2, -1), (3, -1), (18, -2)]),
    25: EtaQuotient([(1, 1), (25, -1)]),
}

GENUS_ZERO_LEVELS = tuple(sorted(ETA_QUOTIENTS))


def eta_unit_series(m: int, order: int) -> Series:
    """prod_{n>=1} (1 - q^(m n)) with exponents below ``order``.

    Uses Euler's pentagonal number theorem; the q^(m/24) prefactor of
    eta(m tau) is not included.
    """
    if m < 1 or order < 1:
        raise ValueError("m and order must be positive")
    terms = {}
    k = 0
    while True:
        e1 = m * k * (3 * k - 1) // 2
        if e1 >= order:
            break
        sign = -1 if k % 2 else 1
        terms[e1] = sign
        e2 = m * k * (3 * k + 1) // 2
        if k and e2 < order:
            terms[e2] = sign
        k += 1
    return Series(terms, order)


def eta_quotient_series(eq: EtaQuotient, order: int) -> Series:
    """Unit part prod (1 - q^(mn))^r through q^(order - 1) (prefactor dropped)."""
    result = Series.one().truncate(order)
    for m, r in eq.factors:
        unit = eta_unit_series(m, order)
        result = result * (unit ** r)
    return result


def hauptmodul_series(M: int, order: int) -> Series:
    """Normalized eta-quotient Hauptmodul of X_0(M), coefficients through q^order."""
    if M not in ETA_QUOTIENTS:
        raise ValueError(f"no eta-quotient Hauptmodul for level {M}; supported: {GENUS_ZERO_LEVELS}")
    if order < -1:
        raise ValueError("order must be at least -1")
    eq = ETA_QUOTIENTS[M]
    prefactor = eq.prefactor
    assert prefactor == -1, f"eta prefactor for level {M} is {prefactor}, expected -1"
    return eta_quotient_series(eq, order + 2).shift(-1)


def _sigma3(n: int) -> int:
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def j_series(order: int) -> Series:
    """Klein's j = E_4^3 / Delta through q^order."""
    if order < -1:
        raise ValueError("order must be at least -1")
    n = order + 2
    e4 = Series({0: 1, **{k: 240 * _sigma3(k) for k in range(1, n)}}, n)
    delta_unit = eta_unit_series(1, n) ** 24
    return (e4 ** 3 * delta_unit.inverse()).shift(-1)


def conjugate_series(t: Series, rep: tuple[int, int, int], ambient_level: int) -> Series:
    """t((a tau + b)/d) expanded in u = q^(1/N) over Z[zeta_N], N = a d."""
    a, b, d = rep
    N = ambient_level
    if a * d != N:
        raise ValueError(f"rep {rep} does not have determinant {N}")
    if t.level != 1 or t.denom != 1:
        raise ValueError("t must have integer exponents and integer coefficients")
    a2 = a * a
    trunc = None if t.trunc is None else t.trunc * a2
    if N == 1:
        return t
    phi = euler_phi(N)
    step = N // d
    terms = {}
    for m, c in t.terms.items():
        k = (step * m * b) % N
        if k == 0:
            terms[m * a2] = (c,) + (0,) * (phi - 1)
        else:
            z = CycInt.zeta(N, k).coeffs
            terms[m * a2] = tuple(c * x for x in z)
    return Series._raw(_clean(terms, N), trunc, N, N)
