"""L-infinity normalised tensor Haar system and Haar coefficients.

The discrepancy function here is the unnormalised, upper-anchored form

    g(x) = sum_{z in sigma} 1[x in (z, 1]] - N x_1 ... x_d,

which equals ``N`` times the normalised discrepancy function almost
everywhere. Parseval reads ``||f||^2 = sum_j 2^|j| sum_m mu_{j,m}^2``.

One-dimensional integrals are closed-form piecewise evaluations on dyadic
end points, so the zero coefficients are exact zeros.
"""
from __future__ import annotations

import itertools
import math

from .constants import const_gamma
from .core import DomainError, HaarIndex, PointSet, ShapeError

__all__ = [
    "haar_eval",
    "haar_eval_1d",
    "haar_integral",
    "haar_inner_product",
    "haar_coeff_monomial",
    "haar_coeff_indicator",
    "haar_coeff_discrepancy",
    "haar_coefficient",
    "haar_parseval_partial",
    "haar_indices",
    "support_box",
    "in_open_support",
    "empty_box_count",
    "empty_box_energy",
    "roth_haar_bound",
]


def _as_index(idx) -> HaarIndex:
    if isinstance(idx, HaarIndex):
        return idx
    j, m = idx
    return HaarIndex(tuple(j), tuple(m))


def _interval(j: int, m: int):
    """``(lo, mid, hi)`` of the support of ``h_{j,m}``; level -1 is ``[0, 1)``."""
    if j == -1:
        return 0.0, None, 1.0
    w = math.ldexp(1.0, -j)
    lo = m * w
    return lo, lo + w / 2.0, lo + w


def haar_eval_1d(j: int, m: int, x: float) -> float:
    lo, mid, hi = _interval(j, m)
    if j == -1:
        return 1.0
    if lo <= x < mid:
        return 1.0
    if mid <= x < hi:
        return -1.0
    return 0.0


def haar_eval(idx, x) -> float:
    idx = _as_index(idx)
    coords = tuple(x)
    if len(coords) != idx.dim:
        raise ShapeError(f"index has dim {idx.dim}, point has dim {len(coords)}")
    out = 1.0
    for j, m, xi in zip(idx.shape, idx.position, coords):
        out *= haar_eval_1d(j, m, xi)
        if out == 0.0:
            return 0.0
    return out


def haar_integral(j: int, m: int, lower: float = 0.0, upper: float = 1.0) -> float:
    """``int_lower^upper h_{j,m}`` exactly."""
    lo, mid, hi = _interval(j, m)
    if j == -1:
        return max(0.0, min(upper, hi) - max(lower, lo))
    left = max(0.0, min(upper, mid) - max(lower, lo))
    right = max(0.0, min(upper, hi) - max(lower, mid))
    return left - right


def _pieces(j: int, m: int):
    lo, mid, hi = _interval(j, m)
    if j == -1:
        return [(lo, hi, 1.0)]
    return [(lo, mid, 1.0), (mid, hi, -1.0)]


def haar_inner_product(idx1, idx2) -> float:
    """``int h_idx1 h_idx2`` by exact overlap of the constant pieces."""
    a, b = _as_index(idx1), _as_index(idx2)
    if a.dim != b.dim:
        raise ShapeError("indices have different dimensions")
    out = 1.0
    for j1, m1, j2, m2 in zip(a.shape, a.position, b.shape, b.position):
        axis = 0.0
        for lo1, hi1, s1 in _pieces(j1, m1):
            for lo2, hi2, s2 in _pieces(j2, m2):
                overlap = min(hi1, hi2) - max(lo1, lo2)
                if overlap > 0:
                    axis += s1 * s2 * overlap
        out *= axis
    return out


def _monomial_1d(j: int, m: int) -> float:
    # int x h_{j,m}(x) dx = (mid^2 - lo^2)/2 - (hi^2 - mid^2)/2
    lo, mid, hi = _interval(j, m)
    if j == -1:
        return 0.5
    return (mid - lo) * (mid + lo) / 2.0 - (hi - mid) * (hi + mid) / 2.0


def _indicator_1d(z: float, j: int, m: int) -> float:
    # int_z^1 h_{j,m}
    lo, mid, hi = _interval(j, m)
    if j == -1:
        return 1.0 - z
    if z <= lo or z >= hi:
        return 0.0
    if z < mid:
        return lo - z
    return z - hi


def _require_nonnegative_shape(idx: HaarIndex) -> None:
    if any(j < 0 for j in idx.shape):
        raise DomainError(f"shape {idx.shape} has a level -1 component; levels must be >= 0")


def haar_coeff_monomial(idx, d=None) -> float:
    """Haar coefficient of ``x_1 ... x_d``.

    The value is ``(-1)^d 2^(-2|j| - 2d)``: each axis contributes
    ``-2^(-2j-2)`` because the Haar function is positive on the left half.
    """
    idx = _as_index(idx)
    if d is not None and d != idx.dim:
        raise ShapeError(f"d = {d} does not match index dimension {idx.dim}")
    _require_nonnegative_shape(idx)
    return math.prod(_monomial_1d(j, m) for j, m in zip(idx.shape, idx.position))


def haar_coeff_indicator(z, idx) -> float:
    """Haar coefficient of the indicator of ``(z_1, 1] x ... x (z_d, 1]``.

    Exactly zero unless ``z`` lies in the open support box of the Haar function.
    """
    idx = _as_index(idx)
    z = tuple(float(c) for c in z)
    if len(z) != idx.dim:
        raise ShapeError(f"z has dim {len(z)}, index has dim {idx.dim}")
    _require_nonnegative_shape(idx)
    out = 1.0
    for zi, j, m in zip(z, idx.shape, idx.position):
        out *= _indicator_1d(zi, j, m)
        if out == 0.0:
            return 0.0
    return out


def haar_coefficient(sigma: PointSet, idx) -> float:
    """Haar coefficient of the unnormalised discrepancy function, any levels >= -1."""
    idx = _as_index(idx)
    if idx.dim != sigma.dim:
        raise ShapeError(f"index has dim {idx.dim}, point set has dim {sigma.dim}")
    if sigma.count == 0:
        raise DomainError("point set is empty")
    terms = []
    for row in sigma.array.tolist():
        prod = 1.0
        for zi, j, m in zip(row, idx.shape, idx.position):
            prod *= _indicator_1d(zi, j, m)
            if prod == 0.0:
                break
        terms.append(prod)
    volume = math.prod(_monomial_1d(j, m) for j, m in zip(idx.shape, idx.position))
    return math.fsum(terms) - sigma.count * volume


def haar_coeff_discrepancy(sigma: PointSet, idx) -> float:
    """Lemma-scope coefficient (all levels >= 0) of the discrepancy function."""
    idx = _as_index(idx)
    _require_nonnegative_shape(idx)
    return haar_coefficient(sigma, idx)


def support_box(idx):
    idx = _as_index(idx)
    return [(_interval(j, m)[0], _interval(j, m)[2]) for j, m in zip(idx.shape, idx.position)]


def in_open_support(z, idx) -> bool:
    return all(lo < zi < hi for zi, (lo, hi) in zip(z, support_box(idx)))


def haar_indices(d: int, max_level: int, min_level: int = -1):
    """All indices with every level in ``min_level..max_level``."""
    levels = range(min_level, max_level + 1)
    for shape in itertools.product(levels, repeat=d):
        ranges = [range(2**j) if j >= 0 else range(1) for j in shape]
        for pos in itertools.product(*ranges):
            yield HaarIndex(shape, pos)


def haar_parseval_partial(sigma: PointSet, max_level: int) -> float:
    """``sum 2^|j| mu^2`` over all indices with levels ``<= max_level``.

    Increases to ``N^2 L2^2`` as ``max_level`` grows.
    """
    total = []
    for idx in haar_indices(sigma.dim, max_level):
        mu = haar_coefficient(sigma, idx)
        total.append(2.0**idx.order * mu * mu)
    return math.fsum(total)


def _level_vectors(d: int, order: int):
    """Shapes in ``N_0^d`` with level sum ``order``."""
    for cuts in itertools.combinations(range(order + d - 1), d - 1):
        prev, shape = -1, []
        for c in cuts + (order + d - 1,):
            shape.append(c - prev - 1)
            prev = c
        yield tuple(shape)


def empty_box_count(sigma: PointSet, shape) -> int:
    """Number of boxes of ``shape`` whose interior holds no point of ``sigma``."""
    shape = tuple(int(j) for j in shape)
    if len(shape) != sigma.dim or any(j < 0 for j in shape):
        raise DomainError(f"shape {shape} must have {sigma.dim} levels >= 0")
    total = 2 ** sum(shape)
    occupied = set()
    for row in sigma.array.tolist():
        cell = []
        for zi, j in zip(row, shape):
            scaled = zi * 2**j
            k = math.floor(scaled)
            if scaled == k:
                # on a box boundary: not interior to any box of this level
                break
            cell.append(k)
        else:
            occupied.add(tuple(cell))
    return total - len(occupied)


def empty_box_energy(sigma: PointSet, order_min: int, order_max: int) -> float:
    """Parseval contribution of empty boxes with ``order_min <= |j| <= order_max``.

    Each empty box has ``|mu| = N 2^(-2|j|-2d)``, so the sum is a lower
    bound for ``N^2 L2^2``.
    """
    N, d = sigma.count, sigma.dim
    total = []
    for order in range(order_min, order_max + 1):
        for shape in _level_vectors(d, order):
            e = empty_box_count(sigma, shape)
            total.append(2.0**order * e * (N * 2.0 ** (-2 * order - 2 * d)) ** 2)
    return math.fsum(total)


def roth_haar_bound(N: int, d: int) -> float:
    """``gamma(d-1) (log N)^((d-1)/2) / N``: lower bound on the L2-discrepancy."""
    if d < 2:
        raise DomainError(f"the bound needs d >= 2, got d = {d}")
    if N < 2:
        raise DomainError(f"the bound needs N >= 2, got N = {N}")
    return const_gamma(d - 1) * math.log(N) ** ((d - 1) / 2.0) / N
