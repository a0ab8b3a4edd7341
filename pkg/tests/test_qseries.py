from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modcorr.cyclotomic import CycInt
from modcorr.qseries import (
    ETA_QUOTIENTS,
    GENUS_ZERO_LEVELS,
    Series,
    conjugate_series,
    eta_quotient_series,
    eta_unit_series,
    hauptmodul_series,
    j_series,
)


def naive_product(m, order):
    coeffs = [1] + [0] * (order - 1)
    for n in range(1, order):
        if m * n >= order:
            break
        # multiply by (1 - q^(m n))
        for k in range(order - 1, m * n - 1, -1):
            coeffs[k] -= coeffs[k - m * n]
    return coeffs


def naive_inverse(c, order):
    inv = [0] * order
    inv[0] = 1
    for n in range(1, order):
        inv[n] = -sum(c[k] * inv[n - k] for k in range(1, n + 1))
    return inv


def naive_mul(a, b, order):
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(order)]


def dense(s, lo, hi):
    return [s.coeff(e) for e in range(lo, hi)]


def test_eta_unit_examples():
    assert eta_unit_series(1, 1) == Series({0: 1}, 1)
    assert eta_unit_series(1, 8) == Series({0: 1, 1: -1, 2: -1, 5: 1, 7: 1}, 8)
    assert eta_unit_series(2, 5) == Series({0: 1, 2: -1, 4: -1}, 5)


def test_eta_unit_against_naive_product():
    for m in (1, 2, 3, 5):
        assert dense(eta_unit_series(m, 200), 0, 200) == naive_product(m, 200)


def test_hauptmodul_level_2():
    t = hauptmodul_series(2, 2)
    assert dense(t, -1, 3) == [1, -24, 276, -2048]
    with pytest.raises(ValueError):
        t.coeff(3)


def test_hauptmodul_level_2_against_naive_oracle():
    order = 30
    num = naive_product(1, order)
    den = naive_product(2, order)
    a = [1] + [0] * (order - 1)
    b = [1] + [0] * (order - 1)
    for _ in range(24):
        a = naive_mul(a, num, order)
        b = naive_mul(b, den, order)
    expected = naive_mul(a, naive_inverse(b, order), order)
    t = hauptmodul_series(2, order - 2)
    assert dense(t, -1, order - 1) == expected


def test_hauptmodul_level_9():
    # eta^3 is supported on triangular exponents and eta(9 tau)^3 only enters at q^8
    t = hauptmodul_series(9, 2)
    assert dense(t, -1, 3) == [1, -3, 0, 5]


def test_hauptmodul_level_13_and_shape():
    t = hauptmodul_series(13, 0)
    assert t.valuation() == -1 and t.coeff(-1) == 1
    for M in GENUS_ZERO_LEVELS:
        t = hauptmodul_series(M, 20)
        assert [e for e in t.terms if e < 0] == [-1]
        assert t.coeff(-1) == 1
        assert ETA_QUOTIENTS[M].prefactor == -1


def test_hauptmodul_unsupported_level():
    with pytest.raises(ValueError):
        hauptmodul_series(11, 3)


def test_j_series():
    j = j_series(3)
    assert dense(j, -1, 4) == [1, 744, 196884, 21493760, 864299970]
    assert dense(j_series(0), -1, 1) == [1, 744]


def test_conjugate_identity_and_scaling():
    t = hauptmodul_series(5, 6)
    assert conjugate_series(t, (1, 0, 1), 1) == t
    s = conjugate_series(t, (3, 0, 1), 3)
    assert s.denom == 3
    for e, c in t.terms.items():
        assert s.coeff(9 * e) == CycInt.from_int(3, c)


def test_conjugate_example():
    t = Series({-1: 1, 0: -12, 1: 54}, 2)
    s = conjugate_series(t, (1, 1, 2), 2)
    assert s.denom == 2
    assert s.coeff(-1).to_int() == -1
    assert s.coeff(0).to_int() == -12
    assert s.coeff(1).to_int() == -54


def test_geometric_series():
    geo = Series({k: 1 for k in range(20)}, 20)
    assert (Series({0: 1, 1: -1}) * geo) == Series({0: 1}, 20)
    assert geo ** 0 == Series.one()
    assert Series({0: 1, 1: -1}, 20).inverse() == geo


def test_inverse_requires_unit():
    with pytest.raises(ZeroDivisionError):
        Series({0: 2, 1: 1}, 10).inverse()


def test_truncation_propagation():
    a = Series({-1: 1, 0: 3}, 5)
    b = Series({2: 1}, 4)
    prod = a * b
    # a known below 5, b known below 4: product known below min(5 + 2, 4 - 1)
    assert prod.trunc == 3
    assert (a + b).trunc == 4


def test_fractional_exponents_align():
    a = Series({1: 1}, None, denom=2)
    b = Series({1: 1}, None, denom=3)
    c = a * b
    assert c.coeff(5) == 1 and c.denom == 6


def test_eta_quotient_level_4():
    eq = ETA_QUOTIENTS[4]
    assert eq.prefactor == Fraction(-1)
    assert eta_quotient_series(eq, 3).coeff(0) == 1


series_terms = st.dictionaries(st.integers(-3, 15), st.integers(-20, 20), max_size=10)


@settings(max_examples=60)
@given(series_terms, series_terms, series_terms)
def test_mul_commutative_associative(x, y, z):
    a, b, c = Series(x, 18), Series(y, 16), Series(z, 17)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60)
@given(series_terms, series_terms, st.integers(0, 12))
def test_truncation_soundness(x, y, cut):
    hi = Series(x, 40) * Series(y, 40)
    lo = Series(x, 20) * Series(y, 20)
    bound = min(cut, lo.trunc)
    assert hi.truncate(bound) == lo.truncate(bound)


def test_kronecker_path_matches_schoolbook():
    import random

    rng = random.Random(7)
    a = {k: rng.randint(-10**30, 10**30) for k in range(200)}
    b = {k: rng.randint(-10**30, 10**30) for k in range(-1, 150)}
    prod = Series(a, 200) * Series(b, 150)
    for n in (0, 5, 100, prod.trunc - 1):
        expect = sum(a[i] * b[n - i] for i in a if (n - i) in b)
        assert prod.coeff(n) == expect


def test_cyclotomic_series_multiplication():
    z = CycInt.zeta(5)
    a = Series({0: z.coeffs, 1: 1}, 10, level=5)
    b = Series({0: (z ** 4).coeffs}, 10, level=5)
    assert (a * b).coeff(0) == CycInt.from_int(5, 1)
