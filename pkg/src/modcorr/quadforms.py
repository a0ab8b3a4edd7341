"""Positive definite binary quadratic forms and weighted class numbers.

A form [A, B, C] is A x^2 + B x y + C y^2 with determinant 4AC - B^2 (the
determinant of its bilinear-form matrix). Class numbers are exact
Fractions; the weights 1/2 and 1/3 attach to the classes of e(x^2 + y^2)
and e(x^2 + x y + y^2).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

Matrix = tuple[int, int, int, int]  # (a, b, c, d) for [[a, b], [c, d]]

IDENTITY: Matrix = (1, 0, 0, 1)
PRIME_LEVELS = (2, 3, 5, 7, 13)


@dataclass(frozen=True)
class QForm:
    A: int
    B: int
    C: int

    def __post_init__(self):
        if self.A <= 0 or self.det <= 0:
            raise ValueError(f"{self} is not positive definite")

    @property
    def det(self) -> int:
        return 4 * self.A * self.C - self.B * self.B

    @property
    def content(self) -> int:
        return gcd(gcd(self.A, self.B), self.C)

    def primitive_part(self) -> QForm:
        g = self.content
        return QForm(self.A // g, self.B // g, self.C // g)

    def act(self, m: Matrix) -> QForm:
        """The form (x, y) -> f(a x + b y, c x + d y)."""
        a, b, c, d = m
        A, B, C = self.A, self.B, self.C
        return QForm(A * a * a + B * a * c + C * c * c,
                     2 * A * a * b + B * (a * d + b * c) + 2 * C * c * d,
                     A * b * b + B * b * d + C * d * d)

    def __iter__(self):
        return iter((self.A, self.B, self.C))

    def __str__(self):
        return f"[{self.A},{self.B},{self.C}]"


def matmul(m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def matinv(m: Matrix) -> Matrix:
    a, b, c, d = m
    return (d, -b, -c, a)


def reduce_with_matrix(f: QForm) -> tuple[QForm, Matrix]:
    """Reduced form r and g in SL_2(Z) with f.act(g) == r."""
    A, B, C = f.A, f.B, f.C
    g = IDENTITY
    while True:
        # Translate B into (-A, A].
        if not -A < B <= A:
            k = (A - B) // (2 * A)
            # x -> x, y -> k x + y... use (1 k; 0 1)
            B, C = B + 2 * k * A, A * k * k + B * k + C
            g = matmul(g, (1, k, 0, 1))
        if A > C or (A == C and B < 0):
            A, B, C = C, -B, A
            g = matmul(g, (0, -1, 1, 0))
            continue
        return QForm(A, B, C), g


def reduce_form(f: QForm) -> QForm:
    """Unique reduced representative: -A < B <= A <= C, B >= 0 if A == C."""
    return reduce_with_matrix(f)[0]


def is_reduced(A: int, B: int, C: int) -> bool:
    return -A < B <= A <= C and not (A == C and B < 0)


def reduced_forms(D: int) -> Iterator[QForm]:
    """All reduced forms (primitive or not) of determinant D."""
    if D <= 0 or D % 4 in (1, 2):
        return
    amax = isqrt(D // 3)
    for A in range(1, amax + 1):
        for B in range(-A + 1, A + 1):
            if (B - D) % 2:
                continue
            num = D + B * B
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A or (C == A and B < 0):
                continue
            yield QForm(A, B, C)


def class_weight(f: QForm) -> Fraction:
    """1/2 for the x^2+y^2 class, 1/3 for x^2+xy+y^2, else 1 (by primitive part)."""
    r = reduce_form(f.primitive_part())
    if (r.A, r.B, r.C) == (1, 0, 1):
        return Fraction(1, 2)
    if (r.A, r.B, r.C) == (1, 1, 1):
        return Fraction(1, 3)
    return Fraction(1)


@lru_cache(maxsize=None)
def primitive_h(D: int) -> Fraction:
    """Weighted count of primitive reduced forms of determinant D."""
    if D < 1:
        raise ValueError("D must be positive")
    total = Fraction(0)
    for f in reduced_forms(D):
        if f.content == 1:
            total += class_weight(f)
    return total


@lru_cache(maxsize=None)
def hurwitz_H(D: int) -> Fraction:
    """Hurwitz class number: weighted count over all reduced forms of determinant D."""
    if D < 1:
        raise ValueError("D must be positive")
    return sum((class_weight(f) for f in reduced_forms(D)), Fraction(0))


def hurwitz_H_by_conductor(D: int) -> Fraction:
    """sum_{f^2 | D} primitive_h(D / f^2)."""
    total = Fraction(0)
    f = 1
    while f * f <= D:
        if D % (f * f) == 0:
            total += primitive_h(D // (f * f))
        f += 1
    return total


def _check_disc(D: int):
    if D < 1 or D % 4 in (1, 2):
        raise ValueError(f"D = {D} must be positive and congruent to 0 or 3 mod 4")


def n_sqrt_count(p: int, D: int) -> int:
    """#{h mod 2p : h^2 = -D mod 4p}."""
    _check_disc(D)
    return sum(1 for h in range(2 * p) if (h * h + D) % (4 * p) == 0)


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def ord_p(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@lru_cache(maxsize=None)
def fundamental_disc(D: int) -> tuple[int, int]:
    """(f, dK) with -D = f^2 dK and dK a fundamental discriminant."""
    _check_disc(D)
    square, core = 1, 1
    for p, e in _factor(D).items():
        square *= p ** (e // 2)
        core *= p ** (e % 2)
    dk = -core
    if dk % 4 != 1:
        dk *= 4
        square //= 2
    return square, dk


def kronecker(a: int, p: int) -> int:
    """Kronecker symbol (a | p) for a prime p."""
    if p == 2:
        if a % 2 == 0:
            return 0
        return 1 if a % 8 in (1, 7) else -1
    r = pow(a % p, (p - 1) // 2, p)
    return 0 if r == 0 else (1 if r == 1 else -1)


def chi(D: int, p: int) -> int:
    """Quadratic character of Q(sqrt(-D)) at the prime p."""
    return kronecker(fundamental_disc(D)[1], p)


def HM_prime(p: int, D: int) -> Fraction:
    """H^p(D) = n_D(p) (H(D) + p H(D/p^2)) for prime p."""
    _check_disc(D)
    inner = hurwitz_H(D)
    if D % (p * p) == 0:
        inner += p * hurwitz_H(D // (p * p))
    return n_sqrt_count(p, D) * inner


def Ap(p: int, D: int) -> Fraction:
    """A^p(D) = H^p(D) / H(D)."""
    _check_disc(D)
    h = hurwitz_H(D)
    if h == 0:
        raise ZeroDivisionError(f"H({D}) = 0, A^{p}({D}) is undefined")
    return HM_prime(p, D) / h


def _conductor_exponent(p: int, D: int) -> int:
    return ord_p(fundamental_disc(D)[0], p)


def ratio_closed_form(p: int, D: int) -> Fraction:
    """Closed form of H(D/p^2) / H(D) for p^2 | D.

    With v the exponent of p in the conductor of -D and x = 1 - chi_D(p)/p,
    weighted class numbers grow by p^j x from conductor exponent 0 to j, so
    the ratio is (1 + x sum_{j<v} p^j) / (1 + x sum_{j<=v} p^j) with j >= 1.
    """
    _check_disc(D)
    v = _conductor_exponent(p, D)
    if v == 0:
        return Fraction(0)
    x = 1 - Fraction(chi(D, p), p)
    num = 1 + x * sum(p ** j for j in range(1, v))
    return num / (num + x * p ** v)


def ratio_closed_form_single_step(p: int, D: int) -> Fraction:
    """S / (S + 1 - chi_D(p)/p), S = sum_{k=1}^{v} p^-k, v = floor(ord_p D / 2).

    Agrees with :func:`ratio_closed_form` when p exactly divides the conductor
    and floor(ord_p D / 2) = 1; away from that case it can be wrong.
    """
    v = ord_p(D, p) // 2
    s = sum(Fraction(1, p ** k) for k in range(1, v + 1))
    return s / (s + 1 - Fraction(chi(D, p), p))


def Ap_closed_form(p: int, D: int) -> Fraction:
    """A^p(D) from chi_D(p) and the p-part of the conductor."""
    _check_disc(D)
    if _conductor_exponent(p, D) == 0:
        return Fraction(1 + chi(D, p))
    return 1 + p * ratio_closed_form(p, D)


class ClassRatioMismatch(ArithmeticError):
    """The enumerated class-number ratio disagrees with its closed form."""


def class_ratio(p: int, D: int) -> Fraction:
    """H(D/p^2) / H(D) by enumeration, cross-checked against the closed form."""
    _check_disc(D)
    if D % (p * p):
        raise ValueError(f"{p}^2 does not divide {D}")
    h = hurwitz_H(D)
    if h == 0:
        raise ZeroDivisionError(f"H({D}) = 0")
    small = D // (p * p)
    ratio = (hurwitz_H(small) if small % 4 in (0, 3) else Fraction(0)) / h
    closed = ratio_closed_form(p, D)
    if ratio != closed:
        raise ClassRatioMismatch(f"H({small})/H({D}) = {ratio} but closed form gives {closed}")
    return ratio


# ---------------------------------------------------------------------------
# Gamma_0(M) classes

def automorphs(f: QForm) -> list[Matrix]:
    """All g in SL_2(Z) with f.act(g) == f."""
    r, g = reduce_with_matrix(f)
    p = r.primitive_part()
    base: list[Matrix] = [IDENTITY, (-1, 0, 0, -1)]
    if (p.A, p.B, p.C) == (1, 0, 1):
        base = [IDENTITY, (0, -1, 1, 0), (-1, 0, 0, -1), (0, 1, -1, 0)]
    elif (p.A, p.B, p.C) == (1, 1, 1):
        rot = (0, -1, 1, 1)
        base = [IDENTITY]
        for _ in range(5):
            base.append(matmul(base[-1], rot))
    gi = matinv(g)
    return [matmul(matmul(g, a), gi) for a in base]


def stabilizer_index(M: int, f: QForm) -> int:
    """[Gamma_0(M)_f : {+-1}]."""
    return sum(1 for m in automorphs(f) if m[2] % M == 0) // 2


class BudgetExhausted(RuntimeError):
    """The orbit search did not stabilize within its box budget."""


def _p1_key(c: int, d: int, M: int) -> tuple[int, int]:
    return min(((u * c) % M, (u * d) % M) for u in range(1, M + 1) if gcd(u, M) == 1)


def _lift_row(c: int, d: int, M: int) -> Matrix:
    """A matrix of SL_2(Z) whose bottom row is congruent to (c, d) mod M."""
    for k in range(M * M + 1):
        for cc in (c, c + k * M):
            for dd in (d, d + k * M):
                g, x, y = _ext_gcd(cc, dd)
                if abs(g) == 1:
                    # a dd - b cc = 1 with (a, b) = (y, -x) * g
                    return (y * g, -x * g, cc, dd)
    raise ArithmeticError("no coprime lift found")


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@lru_cache(maxsize=None)
def left_coset_reps(M: int) -> dict[tuple[int, int], Matrix]:
    """h with first column (a : c), one per left coset h Gamma_0(M)."""
    reps: dict[tuple[int, int], Matrix] = {}
    for a in range(M):
        for c in range(M):
            if gcd(gcd(a, c), M) == 1:
                key = _p1_key(a, c, M)
                if key not in reps:
                    x, y, a1, c1 = _lift_row(a, c, M)   # x c1 - y a1 = 1
                    reps[key] = (a1, -x, c1, -y)
    return reps


def HM_orbit(M: int, D: int, max_forms: int = 200_000) -> Fraction:
    """H^M(D) as a sum of 1/[Gamma_0(M)_Q : +-1] over explicit orbits.

    Every Gamma_0(M)-class of forms [M a, b, c] contains r.act(h) with r
    reduced and h a left coset representative of Gamma_0(M). These finitely
    many forms are merged into orbits by breadth-first closure under the
    automorphs of r, which permute the cosets.
    """
    _check_disc(D)
    reps = left_coset_reps(M)
    if sum(1 for _ in reduced_forms(D)) * len(reps) > max_forms:
        raise BudgetExhausted(f"H^{M}({D}) needs more than {max_forms} candidate forms")
    total = Fraction(0)
    for r in reduced_forms(D):
        cosets = {key for key in reps if r.act(reps[key]).A % M == 0}
        auts = automorphs(r)
        seen: set[tuple[int, int]] = set()
        for start in sorted(cosets):
            if start in seen:
                continue
            seen.add(start)
            queue = deque([start])
            while queue:
                key = queue.popleft()
                h = reps[key]
                for alpha in auts:
                    m = matmul(alpha, h)
                    nxt = _p1_key(m[0], m[2], M)
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
            total += Fraction(1, stabilizer_index(M, r.act(reps[start])))
    return total


def HM_cosets(M: int, D: int) -> Fraction:
    """H^M(D) by counting points (a : c) of P^1(Z/M) with f(a, c) = 0 mod M.

    Independent of the orbit search: each SL_2 class f contributes
    w(f) * #{(a : c) : f(a, c) = 0 mod M}.
    """
    _check_disc(D)
    points = projective_line(M)

    total = Fraction(0)
    for f in reduced_forms(D):
        hits = sum(1 for a, c in points if (f.A * a * a + f.B * a * c + f.C * c * c) % M == 0)
        total += class_weight(f) * hits
    return total


@lru_cache(maxsize=None)
def projective_line(M: int) -> tuple[tuple[int, int], ...]:
    """Representatives of P^1(Z/M)."""
    if M == 1:
        return ((0, 1),)
    seen = {}
    for a in range(M):
        for c in range(M):
            if gcd(gcd(a, c), M) == 1:
                seen.setdefault(_p1_key(a, c, M), (a, c))
    return tuple(seen.values())


def HM(M: int, D: int) -> Fraction:
    """H^M(D): H for M = 1, the CK identity for prime M, the orbit search otherwise."""
    if M == 1:
        return hurwitz_H(D)
    if M in PRIME_LEVELS:
        return HM_prime(M, D)
    return HM_orbit(M, D)


# ---------------------------------------------------------------------------
# the bijection between level-M forms and primitive forms with multiplicity data

@dataclass
class BijectionReport:
    e: int
    D: int
    M: int
    left_size: int
    right_size: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def _left_to_right(M, d, form, Z):
    a, b, c = form
    k = (M // gcd(a, M)) * d // Z
    return (k * a, k * b, k * c), Z


def _right_to_left(M, form, Z):
    A, b, c = form
    g = gcd(gcd(A, b), c)
    a1, b1, c1 = A // g, b // g, c // g
    unit = M // gcd(a1, M)
    if (g * Z) % unit:
        return None
    return g * Z // unit, (a1, b1, c1), Z


def _in_left(e, D, M, d, form, Z) -> bool:
    a, b, c = form
    if d < 1 or D % (d * d) or Z < 1 or e % Z or d % Z:
        return False
    if a <= 0 or gcd(gcd(a, b), c) != 1:
        return False
    return (M // gcd(a, M)) ** 2 * (4 * a * c - b * b) == D // (d * d)


def _in_right(e, D, M, form, Z) -> bool:
    A, b, c = form
    if Z < 1 or e % Z or D % (Z * Z) or A <= 0 or A % M:
        return False
    return 4 * A * c - b * b == D // (Z * Z)


def form_bijection_check(e: int, D: int, M: int, bound: int = 30) -> BijectionReport:
    """Materialize both sides with coefficients bounded by ``bound`` and test the maps."""
    if D % (e * e):
        raise ValueError(f"{e}^2 does not divide {D}")
    left = []
    for d in range(1, isqrt(D) + 1):
        if D % (d * d):
            continue
        for Z in range(1, e + 1):
            if e % Z or d % Z:
                continue
            for a in range(1, bound + 1):
                for b in range(-bound, bound + 1):
                    for c in range(1, bound + 1):
                        if _in_left(e, D, M, d, (a, b, c), Z):
                            left.append((d, (a, b, c), Z))
    right = []
    for Z in range(1, e + 1):
        if e % Z or D % (Z * Z):
            continue
        for A in range(M, bound + 1, M):
            for b in range(-bound, bound + 1):
                for c in range(1, bound + 1):
                    if _in_right(e, D, M, (A, b, c), Z):
                        right.append(((A, b, c), Z))
    violations = []
    for d, form, Z in left:
        img = _left_to_right(M, d, form, Z)
        if not _in_right(e, D, M, *img):
            violations.append(f"left {(d, form, Z)} maps outside the right set: {img}")
        elif _right_to_left(M, *img) != (d, form, Z):
            violations.append(f"left {(d, form, Z)} does not round-trip")
    for form, Z in right:
        img = _right_to_left(M, form, Z)
        if img is None or not _in_left(e, D, M, *img):
            violations.append(f"right {(form, Z)} maps outside the left set: {img}")
        elif _left_to_right(M, *img) != (form, Z):
            violations.append(f"right {(form, Z)} does not round-trip")
    return BijectionReport(e, D, M, len(left), len(right), violations)
