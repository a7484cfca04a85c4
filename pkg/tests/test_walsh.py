import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import interior_points
from diaphony import walsh
from diaphony.core import DomainError, PointSet
from diaphony.walsh import (
    WalshTruncation,
    binary_digits,
    dyadic_diaphony_exact,
    dyadic_diaphony_truncated,
    dyadic_kernel,
    dyadic_prefix_squares,
    dyadic_tail_bound,
    dyadic_xor,
    fine_integral_J,
    r2_weight,
    walsh_coeff_discrepancy,
    walsh_coeff_g0,
    walsh_eval,
    walsh_eval_multi,
    walsh_integral_A,
    walsh_integral_A_quadrature,
    walsh_integral_B,
    walsh_matrix,
    walsh_sum,
)

unit = st.floats(min_value=0.0, max_value=1.0, exclude_max=True, allow_nan=False)
dyadic8 = st.integers(0, 255).map(lambda i: i / 256)


def test_walsh_eval_examples():
    assert walsh_eval(0, 0.9) == 1
    assert walsh_eval(1, 0.75) == -1
    assert walsh_eval(3, 0.25) == -1
    assert walsh_eval_multi((0, 0), (0.3, 0.8)) == 1
    assert walsh_eval_multi((1, 1), (0.75, 0.25)) == -1
    assert walsh_eval_multi((3, 0), (0.25, 0.6)) == -1


def test_walsh_sum_examples():
    s = PointSet([[0.0], [0.5]])
    assert walsh_sum(s, (0,)) == 1
    assert walsh_sum(s, (1,)) == 0
    assert walsh_sum(s, (2,)) == 1


def test_binary_digits_and_xor():
    assert binary_digits(0.625, 4) == [1, 0, 1, 0]
    assert dyadic_xor(0.75, 0.5) == 0.25
    assert dyadic_xor(0.1, 0.1) == 0.0


def test_r2_weight():
    assert r2_weight(0) == 1
    assert r2_weight(1) == 1
    assert r2_weight(3) == 0.25
    assert r2_weight(4) == 1 / 16
    assert r2_weight((3, 4)) == 1 / 64


@given(k=st.integers(0, 1023), x=unit)
@settings(max_examples=200, deadline=None)
def test_walsh_matrix_matches_scalar(k, x):
    W = walsh_matrix(np.array([x]), 10)
    assert W[0, k] == walsh_eval(k, x)


def test_walsh_orthonormal_on_grid():
    # wal_k, k < 64, is constant on 1/64 cells, so the grid sum is the integral
    x = np.arange(64) / 64
    W = walsh_matrix(x, 6).astype(float)
    assert np.array_equal(W.T @ W / 64, np.eye(64))


def test_walsh_constant_on_cells():
    for k in (1, 2, 5, 12, 63):
        a = k.bit_length() - 1
        cells = 2 ** (a + 1)
        for c in range(cells):
            vals = {walsh_eval(k, (c + t) / cells) for t in (0.0, 0.3, 0.999)}
            assert len(vals) == 1


def test_dyadic_examples():
    assert dyadic_diaphony_exact(PointSet([[0.3]])).value == 1.0
    assert dyadic_diaphony_exact(PointSet([[0.0], [0.5]])).value == 0.5
    one = dyadic_diaphony_truncated(PointSet([[0.3]]), 1)
    assert one.value**2 == pytest.approx(0.5, abs=1e-15)
    assert one.error_bound == 0.5


def test_truncation_deficit_is_diagonal():
    # off-diagonal kernels agree exactly once K covers every digit; the
    # diagonal keeps 3 - 2^(1-K) instead of 3
    rng = np.random.Generator(np.random.PCG64(3))
    K = 16
    for d in (1, 2):
        x = rng.integers(0, 256, size=(6, d)) / 256
        s = PointSet(x)
        N = s.count
        diff = dyadic_diaphony_exact(s).value ** 2 - dyadic_diaphony_truncated(s, K).value ** 2
        expected = (3.0**d - (3.0 - 2.0 ** (1 - K)) ** d) / ((3.0**d - 1.0) * N)
        assert diff == pytest.approx(expected, rel=1e-7)
        assert 0 <= diff <= dyadic_tail_bound(d, K)


def test_routes_agree(rng, monkeypatch):
    s = interior_points(rng, 6, 2)
    series = dyadic_diaphony_truncated(s, 5)
    assert series.params["route"] == "walsh-series"
    monkeypatch.setattr(walsh, "_DIRECT_LIMIT", 0)
    gram = dyadic_diaphony_truncated(s, 5)
    assert gram.params["route"] == "gram"
    assert gram.value == pytest.approx(series.value, rel=1e-13)


@given(x=st.integers(0, 2**12 - 1), y=st.integers(0, 2**12 - 1))
@settings(max_examples=200, deadline=None)
def test_kernel_matches_literal_series(x, y):
    # 12-bit inputs: the K = 12 series is exact off the diagonal
    K = 12
    pts = np.array([x, y]) / 2.0**K
    W = walsh_matrix(pts, K).astype(float)
    series = float((W[0] * walsh._r2_vector(K)) @ W[1])
    kernel = dyadic_kernel(pts[:1], pts[1:])[0, 0]
    if x == y:
        assert kernel == 3.0
        assert series == 3.0 - 2.0 ** (1 - K)
    else:
        assert kernel == series


def test_kernel_beyond_64_digits():
    x = 0.5 + 2.0**-52
    y = 0.5 + 2.0**-53
    assert dyadic_kernel(np.array([x]), np.array([y]))[0, 0] == 3.0 - 6.0 * 2.0**-52
    x, y = 2.0**-70, 2.0**-71
    assert dyadic_kernel(np.array([x]), np.array([y]))[0, 0] == 3.0 - 6.0 * 2.0**-70


@given(st.lists(dyadic8, min_size=1, max_size=6), st.integers(0, 255))
@settings(max_examples=60, deadline=None)
def test_xor_translation_invariance(xs, shift):
    s = PointSet(np.array(xs).reshape(-1, 1))
    t = PointSet(np.array([dyadic_xor(v, shift / 256) for v in xs]).reshape(-1, 1))
    assert dyadic_diaphony_exact(t).value == pytest.approx(dyadic_diaphony_exact(s).value, abs=1e-15)


def test_prefix_squares_match(rng):
    s = interior_points(rng, 15, 2)
    sq = dyadic_prefix_squares(s)
    for n in (1, 8, 15):
        assert sq[n - 1] == pytest.approx(dyadic_diaphony_exact(s.prefix(n)).value ** 2, rel=1e-12)


def test_integral_examples():
    assert walsh_integral_A(1, 0.25) == -0.25
    assert walsh_integral_A(7, 0.0) == 0.0
    assert walsh_integral_A(2, 0.5) == 0.0
    assert fine_integral_J(1, 0.5) == 0.5
    assert fine_integral_J(9, 0.0) == 0.0
    assert walsh_integral_B(3) == walsh_integral_B(5) == 0.0
    assert walsh_integral_B(1) == -0.25
    assert walsh_integral_B(2) == -0.125
    with pytest.raises(DomainError):
        walsh_integral_A(0, 0.3)
    with pytest.raises(DomainError):
        walsh_integral_B(0)


@given(k=st.integers(1, 4096), x=unit)
@settings(max_examples=300, deadline=None)
def test_J_plus_A_vanishes(k, x):
    assert fine_integral_J(k, x) + walsh_integral_A(k, x) == 0.0


def test_A_against_exact_cell_sum():
    for k in (1, 3, 6, 17, 40):
        cells = 2 ** k.bit_length()
        for x in (0.0, 0.13, 0.5, 0.71, 0.999):
            total = 0.0
            for c in range(cells):
                lo, hi = c / cells, (c + 1) / cells
                total += walsh_eval(k, lo) * max(0.0, hi - max(lo, x))
            assert walsh_integral_A(k, x) == pytest.approx(total, abs=1e-15)


def test_A_quadrature_oracle():
    assert walsh_integral_A_quadrature(5, 0.3) == pytest.approx(walsh_integral_A(5, 0.3), abs=1e-12)


def test_coefficients():
    assert walsh_coeff_g0(PointSet([[0.3]])) == 0.0
    assert abs(walsh_coeff_g0(PointSet([[0.25, 0.7]]))) < 1e-15
    # g = 1[0.25 < x] - x against wal_1: 0.25 - 0.5 + 0.25
    assert walsh_coeff_discrepancy(PointSet([[0.25]]), (1,)) == 0.0


@pytest.mark.parametrize("k", [1, 2, 3, 4, 6, 13])
def test_coefficient_against_quadrature(k, rng):
    from scipy import integrate

    a = np.sort(rng.random(5))
    s = PointSet(a.reshape(-1, 1))
    cells = 2 ** k.bit_length()
    breaks = sorted(set([c / cells for c in range(1, cells)] + a.tolist()))

    def integrand(x):
        return (np.count_nonzero(a < x) / a.size - x) * walsh_eval(k, min(x, math.nextafter(1.0, 0.0)))

    val = integrate.quad(integrand, 0.0, 1.0, points=breaks, limit=500, epsabs=1e-13)[0]
    assert walsh_coeff_discrepancy(s, (k,)) == pytest.approx(val, abs=1e-10)


def test_errors():
    with pytest.raises(DomainError):
        WalshTruncation(0)
    with pytest.raises(DomainError):
        walsh_eval(-1, 0.2)
    with pytest.raises(DomainError):
        walsh_eval(1, 1.0)
