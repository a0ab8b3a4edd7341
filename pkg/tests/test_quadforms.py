import random
from fractions import Fraction
from math import isqrt

import pytest
import sympy
from sympy.functions.combinatorial.numbers import kronecker_symbol
from hypothesis import given, settings, strategies as st

from modcorr.quadforms import (
    HM,
    HM_cosets,
    HM_orbit,
    HM_prime,
    Ap,
    Ap_closed_form,
    QForm,
    automorphs,
    chi,
    class_ratio,
    fundamental_disc,
    hurwitz_H,
    hurwitz_H_by_conductor,
    is_reduced,
    kronecker,
    matmul,
    form_bijection_check,
    n_sqrt_count,
    primitive_h,
    ratio_closed_form,
    ratio_closed_form_single_step,
    reduce_form,
    reduce_with_matrix,
    stabilizer_index,
)

GENERATORS = [(1, 1, 0, 1), (1, -1, 0, 1), (0, -1, 1, 0)]


def random_word(rng, length):
    m = (1, 0, 0, 1)
    for _ in range(length):
        m = matmul(m, rng.choice(GENERATORS))
    return m


def test_reduce_examples():
    assert reduce_form(QForm(1, 1, 1)) == QForm(1, 1, 1)
    assert reduce_form(QForm(1, -1, 1)) == QForm(1, 1, 1)
    assert reduce_form(QForm(2, 2, 3)) == QForm(2, 2, 3)


def test_not_positive_definite():
    with pytest.raises(ValueError):
        QForm(1, 2, 1)
    with pytest.raises(ValueError):
        QForm(-1, 0, -1)


def test_reduction_is_invariant():
    rng = random.Random(11)
    for _ in range(200):
        A = rng.randint(1, 40)
        C = rng.randint(1, 40)
        B = rng.randint(-isqrt(4 * A * C - 1), isqrt(4 * A * C - 1))
        f = QForm(A, B, C)
        r = reduce_form(f)
        assert is_reduced(r.A, r.B, r.C)
        assert reduce_form(r) == r
        g = random_word(rng, 20)
        assert reduce_form(f.act(g)) == r


def test_reduce_with_matrix():
    rng = random.Random(5)
    for _ in range(50):
        f = QForm(3, 1, 5).act(random_word(rng, 15))
        r, g = reduce_with_matrix(f)
        assert f.act(g) == r


def test_class_numbers():
    assert primitive_h(5) == 0
    assert primitive_h(3) == Fraction(1, 3)
    assert primitive_h(4) == Fraction(1, 2)
    assert primitive_h(23) == 3
    assert hurwitz_H(3) == Fraction(1, 3)
    assert hurwitz_H(12) == Fraction(4, 3)
    assert all(hurwitz_H(D) == 0 for D in range(1, 200) if D % 4 in (1, 2))


def test_primitive_h_matches_sympy_class_number():
    # for fundamental discriminants below -4 the weighted count is the usual class number
    for D in range(7, 400):
        if D % 4 in (0, 3) and fundamental_disc(D)[0] == 1:
            # count reduced primitive forms independently
            count = 0
            for a in range(1, D + 1):
                for b in range(-a + 1, a + 1):
                    if (b * b + D) % (4 * a) == 0:
                        c = (b * b + D) // (4 * a)
                        if c >= a and not (b < 0 and a == c) and sympy.gcd(sympy.gcd(a, b), c) == 1:
                            count += 1
            assert primitive_h(D) == count


def test_double_counting_identity():
    for D in range(1, 1500):
        assert hurwitz_H(D) == hurwitz_H_by_conductor(D)


def test_n_sqrt_count():
    assert n_sqrt_count(3, 3) == 1
    assert n_sqrt_count(2, 3) == 0
    assert n_sqrt_count(5, 100) == 1
    with pytest.raises(ValueError):
        n_sqrt_count(3, 5)


def test_fundamental_disc():
    assert fundamental_disc(4) == (1, -4)
    assert fundamental_disc(12) == (2, -3)
    assert fundamental_disc(3) == (1, -3)
    for D in range(3, 500):
        if D % 4 in (0, 3):
            f, dk = fundamental_disc(D)
            assert -D == f * f * dk
            odd = dk if dk % 4 == 1 else dk // 4
            assert sympy.ntheory.factor_.core(abs(odd)) == abs(odd)
            assert dk % 4 == 1 or (dk // 4) % 4 in (2, 3)


def test_kronecker_against_sympy():
    for p in (2, 3, 5, 7, 13):
        for a in range(-200, 0):
            assert kronecker(a, p) == kronecker_symbol(a, p)
    assert chi(4, 3) == -1
    assert chi(12, 2) == -1
    assert chi(3, 3) == 0


def test_HM_prime_examples():
    assert HM_prime(2, 12) == 2
    assert HM_prime(5, 23) == 0
    assert HM_prime(3, 4) == 0  # chi = -1 and 9 does not divide 4


def test_HM_orbit_examples():
    assert HM_orbit(2, 12) == 2
    assert HM_orbit(3, 3) == HM_prime(3, 3) == Fraction(1, 3)
    assert HM_orbit(5, 23) == 0


def test_HM_orbit_agrees_with_prime_formula():
    for p in (2, 3, 5):
        for D in range(3, 201):
            if D % 4 in (0, 3):
                assert HM_orbit(p, D) == HM_prime(p, D), (p, D)


def test_orbit_and_coset_counts_agree_for_composite_levels():
    for M in (4, 6, 8, 9, 10):
        for D in range(3, 120):
            if D % 4 in (0, 3):
                assert HM_orbit(M, D) == HM_cosets(M, D), (M, D)
    assert HM(1, 12) == hurwitz_H(12)


def test_stabilizer_index():
    assert stabilizer_index(1, QForm(2, 1, 3)) == 1
    assert stabilizer_index(1, QForm(1, 0, 1)) == 2
    assert stabilizer_index(1, QForm(1, 1, 1)) == 3
    assert stabilizer_index(2, QForm(2, 2, 2)) == 1
    for f in (QForm(1, 0, 1), QForm(1, 1, 1), QForm(3, 3, 3), QForm(2, 1, 5)):
        assert all(f.act(g) == f for g in automorphs(f))


def test_Ap_examples():
    assert Ap(3, 4) == 0
    assert Ap(2, 12) == Fraction(3, 2)
    assert Ap(3, 3) == 1  # ramified, v = 0
    with pytest.raises(ValueError):
        Ap(2, 5)


def test_Ap_closed_form_with_no_p_in_conductor():
    for p in (2, 3, 5, 7, 13):
        for D in range(3, 2001):
            if D % 4 in (0, 3) and (D % (p * p) or fundamental_disc(D)[0] % p):
                assert Ap(p, D) == 1 + chi(D, p)
                assert Ap_closed_form(p, D) == Ap(p, D)


def test_class_ratio():
    assert class_ratio(2, 12) == Fraction(1, 4)
    assert class_ratio(2, 16) == hurwitz_H(4) / hurwitz_H(16)
    for p in (2, 3, 5, 7, 13):
        for D in range(p * p, 2001, p * p):
            if D % 4 in (0, 3):
                class_ratio(p, D)


def test_single_step_form_needs_conductor_exponent_one():
    # S / (S + 1 - chi/p) only holds when p exactly divides the conductor
    assert ratio_closed_form_single_step(2, 12) == ratio_closed_form(2, 12)
    assert ratio_closed_form_single_step(2, 16) != ratio_closed_form(2, 16)
    assert ratio_closed_form(2, 16) == hurwitz_H(4) / hurwitz_H(16)


@pytest.mark.parametrize("e,D,M", [(1, 3, 2), (2, 16, 3), (2, 12, 2), (1, 4, 5)])
def test_bijection(e, D, M):
    report = form_bijection_check(e, D, M)
    assert report.ok, report.violations
    assert (report.left_size == 0) == (report.right_size == 0)


def test_bijection_empty():
    report = form_bijection_check(1, 1, 2)
    assert report.ok and report.left_size == report.right_size == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 25), st.sampled_from([2, 3, 5]))
def test_bijection_random(e, k, M):
    D = e * e * k
    report = form_bijection_check(e, D, M, bound=16)
    assert report.ok, report.violations
