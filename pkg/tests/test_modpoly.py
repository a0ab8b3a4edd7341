import json
import random

import pytest
import sympy

from modcorr.modpoly import (
    CacheError,
    ModPoly,
    PrecisionError,
    cache_load,
    cache_store,
    cached_polynomial,
    index_gamma0,
    matrix_reps,
    phi_polynomial,
    pole_reduce,
    psi_polynomial,
    required_truncation,
)
from modcorr.qseries import Series, hauptmodul_series, j_series
from modcorr.verify import reference_rows


def reps(N, primitive_only=False):
    return {r.as_tuple() for r in matrix_reps(N, primitive_only)}


def test_matrix_reps():
    assert reps(2) == {(1, 0, 2), (1, 1, 2), (2, 0, 1)}
    four = reps(4, True)
    assert len(four) == 6 and (2, 0, 2) not in four
    assert len(reps(6, True)) == 12


def test_index_gamma0():
    for p in (2, 3, 5, 7, 13):
        assert index_gamma0(p) == p + 1
    assert index_gamma0(4) == 6
    assert index_gamma0(1) == 1
    for N in range(1, 30):
        assert index_gamma0(N) == len(matrix_reps(N, True))


def test_required_truncation():
    assert required_truncation(3, 2, 8) == 22
    assert required_truncation(5, 3, 8) == 36


def poly_in_t(coeffs, t):
    total = Series({}, None)
    power = Series.one()
    for c in coeffs:
        total = total + power.scale(c)
        power = power * t
    return total


def test_pole_reduce_examples():
    t = hauptmodul_series(3, 30)
    assert pole_reduce(t, t) == [0, 1]
    assert pole_reduce(Series({0: 5}, 30), t) == [5]
    assert pole_reduce(poly_in_t([3, -7, 1], t), t) == [3, -7, 1]


def test_pole_reduce_round_trip():
    rng = random.Random(3)
    t = hauptmodul_series(5, 40)
    for _ in range(20):
        coeffs = [rng.randint(-99, 99) for _ in range(rng.randint(1, 6))]
        coeffs[-1] = coeffs[-1] or 1
        assert pole_reduce(poly_in_t(coeffs, t), t) == coeffs


def test_pole_reduce_rejects_non_polynomial():
    t = hauptmodul_series(2, 20)
    with pytest.raises(PrecisionError):
        pole_reduce(t + Series({3: 1}, 15), t)


def test_small_rows():
    X, Y = sympy.symbols("X Y")
    expected = {
        (3, 2): X**3 - X**2 * Y**2 - 24 * X**2 * Y - 24 * X * Y**2 - 729 * X * Y + Y**3,
        (5, 2): X**3 - X**2 * Y**2 - 12 * X**2 * Y - 12 * X * Y**2 - 125 * X * Y + Y**3,
    }
    for (M, N), poly in expected.items():
        assert psi_polynomial(M, N).terms == {k: int(v) for k, v in sympy.Poly(poly, X, Y).terms()}
    for M in (1, 2, 7):
        assert psi_polynomial(M, 1).terms == {(1, 0): 1, (0, 1): -1}


@pytest.mark.parametrize("row", reference_rows()[2:], ids=lambda r: f"M{r.M}N{r.N}")
def test_reference_rows(row):
    assert psi_polynomial(row.M, row.N).terms == row.terms


def test_reference_row_with_misprint_is_not_symmetric():
    # the shipped (2, 5) row disagrees with itself under X <-> Y
    row = next(r for r in reference_rows() if (r.M, r.N) == (2, 5))
    assert not row.is_symmetric()
    ours = psi_polynomial(2, 5)
    assert ours.is_symmetric()
    assert all(ours.terms[(1, j)] == row.terms[(1, j)] for j in range(1, 6))


def test_classical_phi2():
    expected = {
        (3, 0): 1, (0, 3): 1, (2, 2): -1,
        (2, 1): 1488, (1, 2): 1488,
        (2, 0): -162000, (0, 2): -162000,
        (1, 1): 40773375,
        (1, 0): 8748000000, (0, 1): 8748000000,
        (0, 0): -157464000000000,
    }
    assert psi_polynomial(1, 2).terms == expected


def test_root_identity_and_symmetry():
    for M in (1, 2, 3, 4, 6, 9):
        for N in (2, 3, 5):
            if M % N == 0:
                continue
            psi = psi_polynomial(M, N)
            assert psi.is_symmetric()
            t = j_series(60) if M == 1 else hauptmodul_series(M, 60)
            r = psi.evaluate_series(t.substitute_power(N), t)
            assert not r.terms and r.trunc > 0


def test_phi_factorization():
    psi4, psi1 = psi_polynomial(3, 4), psi_polynomial(3, 1)
    assert phi_polynomial(3, 4).terms == (psi4 * psi1).terms
    assert phi_polynomial(1, 4).deg_x() == 7
    assert phi_polynomial(5, 6).terms == psi_polynomial(5, 6).terms
    assert phi_polynomial(2, 9).terms == (psi_polynomial(2, 9) * psi_polynomial(2, 1)).terms


def test_gcd_violation():
    with pytest.raises(ValueError):
        psi_polynomial(2, 4)
    with pytest.raises(ValueError):
        phi_polynomial(3, 6)


def test_cache_round_trip(tmp_path):
    poly = psi_polynomial(3, 2)
    path = cache_store(poly, tmp_path)
    assert path.name == "psi_M3_N2.json"
    assert cache_load(tmp_path, 3, 2, "psi").terms == poly.terms
    (tmp_path / "phi_M3_N2.json").write_text(path.read_text())
    with pytest.raises(CacheError):
        cache_load(tmp_path, 3, 2, "phi")


def test_cache_large_coefficients(tmp_path):
    big = -954325239073593568474830
    poly = ModPoly(2, 5, "psi", {(5, 1): big, (6, 0): 1})
    cache_store(poly, tmp_path)
    data = json.loads((tmp_path / "psi_M2_N5.json").read_text())
    assert data["terms"][0] == [6, 0, "1"]
    assert cache_load(tmp_path, 2, 5, "psi").terms[(5, 1)] == big


def test_cache_is_bit_exact(tmp_path):
    _, hit = cached_polynomial(5, 3, "psi", tmp_path)
    first = (tmp_path / "psi_M5_N3.json").read_bytes()
    _, hit2 = cached_polynomial(5, 3, "psi", tmp_path)
    assert (hit, hit2) == (False, True)
    (tmp_path / "psi_M5_N3.json").unlink()
    cached_polynomial(5, 3, "psi", tmp_path)
    assert (tmp_path / "psi_M5_N3.json").read_bytes() == first


def test_corrupt_cache(tmp_path):
    (tmp_path / "psi_M3_N2.json").write_text("{not json")
    with pytest.raises(CacheError):
        cache_load(tmp_path, 3, 2, "psi")


def test_guard_does_not_change_result():
    assert psi_polynomial(4, 3, guard=2).terms == psi_polynomial(4, 3, guard=16).terms
