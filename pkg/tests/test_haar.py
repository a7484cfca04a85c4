import itertools
import math

import numpy as np
import pytest

from diaphony.core import DomainError, HaarIndex, PointSet, ShapeError
from diaphony.haar import (
    empty_box_count,
    empty_box_energy,
    haar_coeff_discrepancy,
    haar_coeff_indicator,
    haar_coeff_monomial,
    haar_coefficient,
    haar_eval,
    haar_eval_1d,
    haar_indices,
    haar_inner_product,
    haar_integral,
    haar_parseval_partial,
    in_open_support,
    roth_haar_bound,
    support_box,
)
from diaphony.l2disc import l2_squared


def test_eval_examples():
    assert haar_eval_1d(-1, 0, 0.77) == 1
    assert haar_eval_1d(0, 0, 0.25) == 1
    assert haar_eval_1d(1, 1, 0.8) == -1
    assert haar_eval_1d(1, 0, 0.8) == 0
    assert haar_eval(((0, 1), (0, 1)), (0.25, 0.8)) == -1
    with pytest.raises(ShapeError):
        haar_eval(((0,), (0,)), (0.1, 0.2))


def test_functions_integrate_to_zero():
    for j in range(5):
        for m in range(2**j):
            assert haar_integral(j, m) == 0.0
    assert haar_integral(-1, 0) == 1.0


def test_orthogonality():
    idx = list(haar_indices(1, 3))
    for a, b in itertools.product(idx, idx):
        ip = haar_inner_product(a, b)
        if a == b:
            assert ip == 2.0 ** -a.order
        else:
            assert ip == 0.0


def test_monomial_examples():
    assert haar_coeff_monomial(((0,), (0,))) == -0.25
    assert abs(haar_coeff_monomial(((0, 0), (0, 0)))) == 1 / 16
    with pytest.raises(DomainError):
        haar_coeff_monomial(((-1,), (0,)))
    with pytest.raises(ShapeError):
        haar_coeff_monomial(((0,), (0,)), d=2)


def test_monomial_by_midpoint_sum():
    # x h_{j,m}(x) is piecewise linear, so the midpoint rule on dyadic cells is exact
    G = 64
    mids = (np.arange(G) + 0.5) / G
    for j in range(4):
        for m in range(2**j):
            h = np.array([haar_eval_1d(j, m, x) for x in mids])
            assert haar_coeff_monomial(((j,), (m,))) == pytest.approx(float(mids @ h) / G, abs=1e-16)


def test_indicator_examples():
    assert haar_coeff_indicator((0.6,), ((1,), (0,))) == 0.0
    assert haar_coeff_indicator((0.25,), ((0,), (0,))) == -0.25
    assert haar_coeff_indicator((0.9,), ((0,), (0,))) == pytest.approx(-0.1, abs=1e-15)


def test_indicator_zero_on_boundary():
    assert haar_coeff_indicator((0.5,), ((1,), (1,))) == 0.0
    assert haar_coeff_indicator((0.25,), ((2,), (1,))) == 0.0
    assert not in_open_support((0.5,), ((1,), (1,)))
    assert support_box(((2, 0), (1, 0))) == [(0.25, 0.5), (0.0, 1.0)]


def test_discrepancy_coefficient_example():
    s = PointSet([[0.25]])
    idx = ((0,), (0,))
    expected = haar_coeff_indicator((0.25,), idx) - 1 * (-0.25)
    assert haar_coeff_discrepancy(s, idx) == expected
    with pytest.raises(DomainError):
        haar_coeff_discrepancy(s, ((-1,), (0,)))


def test_empty_box_coefficient():
    s = PointSet([[0.1], [0.3], [0.45], [0.6]])
    idx = HaarIndex((2,), (3,))
    assert empty_box_count(s, (2,)) == 1
    assert abs(haar_coeff_discrepancy(s, idx)) == 4 * 2.0 ** (-2 * 2 - 2)


def test_parseval_partial_sums_increase(rng):
    s = PointSet(rng.random((6, 2)))
    target = s.count**2 * l2_squared(s)
    sums = [haar_parseval_partial(s, J) for J in range(0, 5)]
    assert all(a <= b + 1e-15 for a, b in zip(sums, sums[1:]))
    assert sums[-1] <= target + 1e-12


def test_parseval_1d_converges():
    s = PointSet([[0.3], [0.82]])
    target = s.count**2 * l2_squared(s)
    assert haar_parseval_partial(s, 12) == pytest.approx(target, rel=1e-3)


def test_coefficient_at_level_minus_one():
    # mean of the unnormalised discrepancy function over the cube
    s = PointSet([[0.2, 0.4], [0.7, 0.1]])
    mean = sum((1 - a) * (1 - b) for a, b in s.array.tolist()) - s.count / 4
    assert haar_coefficient(s, ((-1, -1), (0, 0))) == pytest.approx(mean, abs=1e-15)


def test_empty_box_energy_bounds_l2(rng):
    s = PointSet(rng.random((16, 2)))
    energy = empty_box_energy(s, 0, 6)
    assert 0 < energy <= s.count**2 * l2_squared(s)


def test_roth_bound_values():
    assert roth_haar_bound(16, 2) == pytest.approx(0.003409, abs=1e-6)
    g1 = 1 / (math.sqrt(21) * 8 * math.sqrt(math.log(2)))
    assert roth_haar_bound(2, 2) == pytest.approx(g1 * math.sqrt(math.log(2)) / 2, rel=1e-14)
    scaled = [roth_haar_bound(N, 3) * N / math.log(N) for N in (4, 50, 1000)]
    assert scaled == pytest.approx([scaled[0]] * 3, rel=1e-14)
    with pytest.raises(DomainError):
        roth_haar_bound(1, 2)
    with pytest.raises(DomainError):
        roth_haar_bound(10, 1)
