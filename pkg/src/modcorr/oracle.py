"""Exact commutative algebra: resultants, gcds, Groebner bases over Q.

The intersection number of two plane curves is computed straight from its
definition as the dimension of a zero-dimensional quotient ring, optionally
saturated so that common zeros on the coordinate axes are discarded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, isqrt
from typing import Iterable, Sequence

from .modpoly import ModPoly, phi_polynomial
from .quadforms import PRIME_LEVELS

Exp = tuple[int, ...]


class NotZeroDimensional(ArithmeticError):
    pass


class NonProperIntersection(ValueError):
    pass


@dataclass
class BiPoly:
    """Sparse polynomial with rational coefficients in 2 or 3 variables."""

    terms: dict[Exp, Fraction] = field(default_factory=dict)
    nvars: int = 2

    def __post_init__(self):
        if self.nvars not in (2, 3):
            raise ValueError("BiPoly supports 2 or 3 variables")
        clean = {}
        for e, c in self.terms.items():
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} does not have {self.nvars} entries")
            if c:
                clean[tuple(e)] = Fraction(c)
        self.terms = clean

    @classmethod
    def from_modpoly(cls, p: ModPoly, nvars: int = 2) -> BiPoly:
        pad = (0,) * (nvars - 2)
        return cls({(i, j) + pad: Fraction(c) for (i, j), c in p.terms.items()}, nvars)

    @classmethod
    def from_dict(cls, terms: dict, nvars: int | None = None) -> BiPoly:
        if nvars is None:
            nvars = len(next(iter(terms))) if terms else 2
        return cls(dict(terms), nvars)

    @classmethod
    def const(cls, c, nvars: int = 2) -> BiPoly:
        return cls({(0,) * nvars: Fraction(c)}, nvars)

    @classmethod
    def var(cls, k: int, nvars: int = 2) -> BiPoly:
        e = [0] * nvars
        e[k] = 1
        return cls({tuple(e): Fraction(1)}, nvars)

    def embed(self, nvars: int) -> BiPoly:
        if nvars < self.nvars:
            raise ValueError("cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return BiPoly({e + pad: c for e, c in self.terms.items()}, nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree(self, k: int) -> int:
        return max((e[k] for e in self.terms), default=0)

    def _check(self, other: BiPoly):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: BiPoly) -> BiPoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return BiPoly(out, self.nvars)

    def __neg__(self) -> BiPoly:
        return BiPoly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other) -> BiPoly:
        if not isinstance(other, BiPoly):
            return BiPoly({e: c * other for e, c in self.terms.items()}, self.nvars)
        self._check(other)
        out: dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                k = tuple(a + b for a, b in zip(e, f))
                out[k] = out.get(k, 0) + c * d
        return BiPoly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BiPoly:
        out = BiPoly.const(1, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for v, k in zip(point, e):
                m *= Fraction(v) ** k
            total += m
        return total

    def primitive(self) -> BiPoly:
        """Integer coefficients with content 1 and positive leading coefficient."""
        return BiPoly(dict(_primitive_int(self.terms)), self.nvars)

    def __repr__(self) -> str:
        names = "XYW"
        out = []
        for e in sorted(self.terms, key=degrevlex_key, reverse=True):
            mono = "*".join(
                names[k] if a == 1 else f"{names[k]}^{a}" for k, a in enumerate(e) if a
            )
            c = self.terms[e]
            out.append(f"{c}*{mono}" if mono else str(c))
        return "BiPoly(" + (" + ".join(out) or "0") + ")"


def degrevlex_key(e: Exp):
    return (sum(e),) + tuple(-a for a in reversed(e))


def _primitive_int(terms: dict[Exp, Fraction]) -> dict[Exp, int]:
    if not terms:
        return {}
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(c).denominator for c in terms.values()), 1)
    ints = {e: int(Fraction(c) * den) for e, c in terms.items()}
    g = reduce(gcd, ints.values())
    lead = max(ints, key=degrevlex_key)
    if ints[lead] < 0:
        g = -g
    return {e: c // g for e, c in ints.items()}


# univariate integer polynomials, dense lists with the constant term first

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a):
    return [-c for c in a]


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdiv_exact(a, b):
    """a / b in Z[x]; raises if the division leaves a remainder."""
    a = list(a)
    if not b:
        raise ZeroDivisionError
    q = [0] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        c //= lb
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def _ppow(a, n):
    out = [1]
    for _ in range(n):
        out = _pmul(out, a)
    return out


# polynomials in the main variable with coefficients in Z[x]: lists of int lists

def _udeg(A):
    return len(A) - 1


def _uprem(A, B):
    """Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B."""
    A = [list(c) for c in A]
    lb = B[-1]
    e = _udeg(A) - _udeg(B) + 1
    while A and _udeg(A) >= _udeg(B):
        la = A[-1]
        shift = _udeg(A) - _udeg(B)
        A = [_pmul(c, lb) for c in A]
        for j, bc in enumerate(B):
            A[shift + j] = _padd(A[shift + j], _pneg(_pmul(la, bc)))
        A.pop()
        while A and not A[-1]:
            A.pop()
        e -= 1
    if e > 0:
        f = _ppow(lb, e)
        A = [_pmul(c, f) for c in A]
    return A


def _split(P: BiPoly, var: int) -> list[list[int]]:
    """P as a list over powers of variable var with Z[other] coefficients."""
    if P.nvars != 2:
        raise ValueError("resultants are defined for bivariate input")
    ints = _primitive_int(P.terms) if any(Fraction(c).denominator != 1 for c in P.terms.values()) else {
        e: int(c) for e, c in P.terms.items()}
    other = 1 - var
    out = [[] for _ in range(P.degree(var) + 1)]
    for e, c in ints.items():
        row = out[e[var]]
        k = e[other]
        if len(row) <= k:
            row.extend([0] * (k + 1 - len(row)))
        row[k] += c
    return [_trim(r) for r in out]


def _content_scale(P: BiPoly) -> Fraction:
    """P = s * (integer polynomial with the scaling used by _split)."""
    if all(Fraction(c).denominator == 1 for c in P.terms.values()):
        return Fraction(1)
    prim = _primitive_int(P.terms)
    e = next(iter(prim))
    return P.terms[e] / prim[e]


def _subresultant(A, B) -> list[int]:
    if not A or not B:
        return []
    s = 1
    if _udeg(A) < _udeg(B):
        A, B = B, A
        if _udeg(A) % 2 and _udeg(B) % 2:
            s = -1
    if _udeg(B) == 0:
        return _pmul([s], _ppow(B[0], _udeg(A)))
    g, h = [1], [1]
    while True:
        delta = _udeg(A) - _udeg(B)
        if _udeg(A) % 2 and _udeg(B) % 2:
            s = -s
        R = _uprem(A, B)
        A = B
        if not R:
            return []
        div = _pmul(g, _ppow(h, delta))
        B = [_pdiv_exact(c, div) for c in R]
        g = A[-1]
        if delta == 0:
            h = _pmul(h, [1])
        else:
            h = _pdiv_exact(_ppow(g, delta), _ppow(h, delta - 1))
        if _udeg(B) == 0:
            dA = _udeg(A)
            if dA == 0:
                return _pmul([s], h)
            res = _pdiv_exact(_ppow(B[0], dA), _ppow(h, dA - 1))
            return _pmul([s], res)


def resultant_elim(P: BiPoly, Q: BiPoly, var: int = 1) -> list[Fraction]:
    """Res_var(P, Q) as coefficients in the remaining variable, constant first."""
    if P.is_zero() or Q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    dp, dq = P.degree(var), Q.degree(var)
    if dp == 0 or dq == 0:
        raise ValueError("both polynomials need positive degree in the eliminated variable")
    res = _subresultant(_split(P, var), _split(Q, var))
    scale = _content_scale(P) ** dq * _content_scale(Q) ** dp
    return [Fraction(c) * scale for c in res]


# gcd

_CERT_PRIME = (1 << 61) - 1


def _eval_mod(rows: list[list[int]], x0: int, p: int) -> list[int]:
    out = []
    for r in rows:
        v = 0
        for c in reversed(r):
            v = (v * x0 + c) % p
        out.append(v)
    while out and out[-1] == 0:
        out.pop()
    return out


def _gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        inv = pow(b[-1], -1, p)
        a = list(a)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return a


def _coprime_certificate(P: BiPoly, Q: BiPoly, var: int, attempts: int = 4) -> bool:
    """True only when P, Q provably share no factor of positive var-degree.

    If lc_var of both polynomials survives the specialization mod p, any
    common factor of positive var-degree would survive as well.
    """
    A, B = _split(P, var), _split(Q, var)
    rng = random.Random(0x5eed)
    for _ in range(attempts):
        x0 = rng.randrange(2, _CERT_PRIME - 1)
        a, b = _eval_mod(A, x0, _CERT_PRIME), _eval_mod(B, x0, _CERT_PRIME)
        if len(a) != len(A) or len(b) != len(B):
            continue
        if len(_gcd_mod(a, b, _CERT_PRIME)) == 1:
            return True
    return False


def _int_content(a: list[int]) -> int:
    return reduce(gcd, a, 0)


def _uni_gcd(a: list[int], b: list[int]) -> list[int]:
    """gcd in Z[x] by the primitive remainder sequence."""
    if not a:
        return _uni_primitive(b)
    if not b:
        return _uni_primitive(a)
    c = gcd(_int_content(a), _int_content(b))
    a, b = _uni_primitive(a), _uni_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _uni_prem(a, b)
        a, b = b, _uni_primitive(r)
    return _uni_primitive([c * x for x in a])


def _uni_primitive(a: list[int]) -> list[int]:
    a = _trim(list(a))
    if not a:
        return []
    g = _int_content(a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _uni_prem(a, b):
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b) and a:
        la = a[-1]
        shift = len(a) - len(b)
        a = [x * lb for x in a]
        for j, y in enumerate(b):
            a[shift + j] -= la * y
        a.pop()
        _trim(a)
    return a


def _rows_content(rows: list[list[int]]) -> list[int]:
    return reduce(_uni_gcd, rows, [])


def _rows_primitive(rows):
    c = _rows_content(rows)
    if len(c) <= 1:
        k = c[0] if c else 1
        return [[x // k for x in r] for r in rows]
    return [_pdiv_exact(r, c) if r else [] for r in rows]


def _rows_prem(A, B):
    return _uprem(A, B)


def bipoly_gcd(P: BiPoly, Q: BiPoly) -> BiPoly:
    """gcd in Q[X, Y], returned primitive over Z with positive leading term."""
    if P.nvars != 2 or Q.nvars != 2:
        raise ValueError("bipoly_gcd expects bivariate input")
    if P.is_zero():
        return Q.primitive()
    if Q.is_zero():
        return P.primitive()
    var = 1
    A, B = _split(P, var), _split(Q, var)
    cont = _uni_gcd(_rows_content(A), _rows_content(B))
    if P.degree(var) and Q.degree(var) and _coprime_certificate(P, Q, var):
        rows = [cont]
    elif not P.degree(var) or not Q.degree(var):
        rows = [cont]
    else:
        A, B = _rows_primitive(A), _rows_primitive(B)
        if len(A) < len(B):
            A, B = B, A
        while B and len(B) > 1:
            R = _rows_prem(A, B)
            A, B = B, (_rows_primitive(R) if R else [])
        g = A if not B else [[1]]
        g = _rows_primitive(g)
        rows = [_pmul(r, cont) for r in g]
    terms = {}
    for j, r in enumerate(rows):
        for i, c in enumerate(r):
            if c:
                terms[(i, j)] = Fraction(c)
    return BiPoly(terms, 2).primitive()


# Groebner bases, fraction-free over Z with content stripping

IntPoly = dict  # Exp -> int


def _lead(f: IntPoly) -> Exp:
    return max(f, key=degrevlex_key)


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _strip(f: IntPoly) -> IntPoly:
    if not f:
        return f
    g = reduce(gcd, f.values())
    if f[_lead(f)] < 0:
        g = -g
    if g == 1:
        return f
    return {e: c // g for e, c in f.items()}


def _normal_form(f: IntPoly, basis: list[tuple[Exp, IntPoly]]) -> IntPoly:
    """Full reduction of f modulo basis; the result is primitive."""
    f = dict(f)
    done: IntPoly = {}
    steps = 0
    while f:
        m = _lead(f)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                lg = g[lm]
                k = gcd(c, lg)
                a, b = lg // k, c // k
                shift = _sub_exp(m, lm)
                if a != 1:
                    f = {e: v * a for e, v in f.items()}
                    done = {e: v * a for e, v in done.items()}
                for e, v in g.items():
                    key = tuple(x + y for x, y in zip(e, shift))
                    nv = f.get(key, 0) - b * v
                    if nv:
                        f[key] = nv
                    else:
                        f.pop(key, None)
                steps += 1
                if steps % 8 == 0:
                    allc = list(f.values()) + list(done.values())
                    k = reduce(gcd, allc, 0)
                    if k > 1:
                        f = {e: v // k for e, v in f.items()}
                        done = {e: v // k for e, v in done.items()}
                break
        else:
            done[m] = f.pop(m)
    return _strip(done)


def _spoly(f: IntPoly, g: IntPoly) -> IntPoly:
    lf, lg = _lead(f), _lead(g)
    L = _lcm(lf, lg)
    cf, cg = f[lf], g[lg]
    k = gcd(cf, cg)
    a, b = cg // k, cf // k
    sf, sg = _sub_exp(L, lf), _sub_exp(L, lg)
    out: IntPoly = {}
    for e, v in f.items():
        key = tuple(x + y for x, y in zip(e, sf))
        out[key] = out.get(key, 0) + a * v
    for e, v in g.items():
        key = tuple(x + y for x, y in zip(e, sg))
        out[key] = out.get(key, 0) - b * v
    return {e: v for e, v in out.items() if v}


def _buchberger(gens: list[IntPoly]) -> list[IntPoly]:
    G: list[IntPoly] = []
    pairs: list[tuple[int, int]] = []

    def add(h: IntPoly):
        idx = len(G)
        G.append(h)
        for i in range(idx):
            if G[i] is not None:
                pairs.append((i, idx))

    for f in gens:
        h = _normal_form(f, [(_lead(g), g) for g in G if g is not None])
        if h:
            add(h)
    while pairs:
        pairs.sort(key=lambda ij: (degrevlex_key(_lcm(_lead(G[ij[0]]), _lead(G[ij[1]]))), ij))
        i, j = pairs.pop(0)
        if G[i] is None or G[j] is None:
            continue
        li, lj = _lead(G[i]), _lead(G[j])
        L = _lcm(li, lj)
        # product criterion
        if all(min(a, b) == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion
        if any(
            k != i and k != j and G[k] is not None and _divides(_lead(G[k]), L)
            and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        active = [(_lead(g), g) for g in G if g is not None]
        h = _normal_form(_spoly(G[i], G[j]), active)
        if h:
            if not any(h_e for h_e in _lead(h)):
                return [{(0,) * len(_lead(h)): 1}]
            add(h)
    return [g for g in G if g is not None]


def _interreduce(G: list[IntPoly]) -> list[IntPoly]:
    G = sorted(G, key=lambda g: degrevlex_key(_lead(g)))
    minimal = []
    for g in G:
        lg = _lead(g)
        if not any(_divides(_lead(h), lg) for h in minimal):
            minimal = [h for h in minimal if not _divides(lg, _lead(h))]
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = [(_lead(h), h) for n, h in enumerate(minimal) if n != k]
        out.append(_normal_form(g, others))
    for k in range(len(out)):
        minimal[k] = out[k]
    return sorted(out, key=lambda g: degrevlex_key(_lead(g)))


@dataclass
class GroebnerBasis:
    polys: list[BiPoly]
    nvars: int

    def leading_monomials(self) -> list[Exp]:
        return [max(p.terms, key=degrevlex_key) for p in self.polys]

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()


def groebner(gens: Iterable[BiPoly], order: str = "degrevlex") -> GroebnerBasis:
    """Reduced Groebner basis with monic members, sorted by leading monomial."""
    if order != "degrevlex":
        raise ValueError("only degrevlex is supported")
    gens = [g for g in gens]
    if not gens:
        raise ValueError("empty generator list")
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise ValueError("variable count mismatch")
    ints = [_primitive_int(g.terms) for g in gens if not g.is_zero()]
    if not ints:
        return GroebnerBasis([], nvars)
    G = _interreduce(_buchberger(ints))
    polys = []
    for g in G:
        lc = g[_lead(g)]
        polys.append(BiPoly({e: Fraction(c, lc) for e, c in g.items()}, nvars))
    return GroebnerBasis(polys, nvars)


@dataclass(frozen=True)
class StandardMonomialSet:
    monomials: frozenset

    def __len__(self) -> int:
        return len(self.monomials)


def standard_monomials(basis: GroebnerBasis) -> StandardMonomialSet:
    if basis.is_unit():
        return StandardMonomialSet(frozenset())
    leads = basis.leading_monomials()
    bounds = []
    for k in range(basis.nvars):
        pure = [m[k] for m in leads if all(a == 0 for n, a in enumerate(m) if n != k)]
        if not pure:
            raise NotZeroDimensional("not zero-dimensional")
        bounds.append(min(pure))
    mons = frozenset(
        e for e in product(*(range(b) for b in bounds))
        if not any(_divides(m, e) for m in leads)
    )
    return StandardMonomialSet(mons)


def quotient_dim(gens: Iterable[BiPoly]) -> int:
    """dim_Q of Q[vars]/(gens); the ideal must be zero-dimensional."""
    return len(standard_monomials(groebner(list(gens))))


def _require_proper(P: BiPoly, Q: BiPoly):
    if not bipoly_gcd(P, Q).is_constant():
        raise NonProperIntersection("non-proper: the curves share a component")


def multiplicity_off_axes(P: BiPoly, Q: BiPoly) -> int:
    """Total intersection multiplicity of P = Q = 0 over points with x*y != 0."""
    _require_proper(P, Q)
    W, X, Y = (BiPoly.var(k, 3) for k in (2, 0, 1))
    sat = W * X * Y - BiPoly.const(1, 3)
    return quotient_dim([P.embed(3), Q.embed(3), sat])


def oracle_intersection(M: int, N1: int, N2: int, guard: int | None = None) -> int:
    """Intersection number of T_N1 and T_N2 computed from the definition."""
    if M != 1 and M not in PRIME_LEVELS:
        raise ValueError(f"oracle supports M = 1 or prime M in {PRIME_LEVELS}, not {M}")
    if N1 < 1 or N2 < 1 or gcd(N1, M) != 1 or gcd(N2, M) != 1:
        raise ValueError(f"N1 = {N1}, N2 = {N2} must be positive and prime to M = {M}")
    n = N1 * N2
    if isqrt(n) ** 2 == n:
        raise NonProperIntersection("non-proper: N1*N2 is a square")
    kw = {} if guard is None else {"guard": guard}
    P = BiPoly.from_modpoly(phi_polynomial(M, N1, **kw))
    Q = BiPoly.from_modpoly(phi_polynomial(M, N2, **kw))
    if M == 1:
        _require_proper(P, Q)
        return quotient_dim([P, Q])
    return multiplicity_off_axes(P, Q)


def _reduce_rational(f: dict, basis: GroebnerBasis) -> dict:
    """Normal form over Q against a reduced monic basis."""
    f = {e: Fraction(c) for e, c in f.items() if c}
    leads = [(max(p.terms, key=degrevlex_key), p) for p in basis.polys]
    out = {}
    while f:
        m = max(f, key=degrevlex_key)
        c = f.pop(m)
        for lm, g in leads:
            if _divides(lm, m):
                shift = _sub_exp(m, lm)
                for e, v in g.terms.items():
                    if e == lm:
                        continue
                    key = tuple(a + b for a, b in zip(e, shift))
                    nv = f.get(key, 0) - c * v
                    if nv:
                        f[key] = nv
                    else:
                        f.pop(key, None)
                break
        else:
            out[m] = c
    return out


def eliminant(gens: Iterable[BiPoly], var: int = 0) -> list[Fraction]:
    """Monic minimal polynomial of the coordinate ``var`` on Q[vars]/(gens).

    Its roots are the values of that coordinate over the common zeros.
    """
    basis = groebner(list(gens))
    dim = len(standard_monomials(basis))
    nvars = basis.nvars
    rows: list[tuple[dict, list[Fraction]]] = []  # echelon rows with their combination of powers
    for k in range(dim + 1):
        e = [0] * nvars
        e[var] = k
        vec = _reduce_rational({tuple(e): 1}, basis)
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for pivot_row, pivot_combo in rows:
            pm = max(pivot_row, key=degrevlex_key)
            c = vec.get(pm, 0)
            if c:
                for m, v in pivot_row.items():
                    nv = vec.get(m, 0) - c * v
                    if nv:
                        vec[m] = nv
                    else:
                        vec.pop(m, None)
                for i, v in enumerate(pivot_combo):
                    combo[i] -= c * v
        if not vec:
            return combo
        pm = max(vec, key=degrevlex_key)
        lead = vec[pm]
        rows.append(({m: v / lead for m, v in vec.items()}, [v / lead for v in combo]))
    raise ArithmeticError("no linear dependency among powers; quotient is not finite")
