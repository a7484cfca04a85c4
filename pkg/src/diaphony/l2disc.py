"""Discrepancy function and L2-discrepancy.

The closed form is Warnock's pairwise identity

    L2^2 = 3^-d - (2^(1-d)/N) sum_i prod_k (1 - x_ik^2)
           + (1/N^2) sum_{i,j} prod_k (1 - max(x_ik, x_jk)),

checked against a tensor midpoint rule (:func:`l2_quadrature_oracle`).
"""
from __future__ import annotations

import math

import numpy as np

from .core import (
    CapabilityError,
    DomainError,
    MeasureResult,
    PointSet,
    ShapeError,
    VerificationReport,
    exact_sum,
)

__all__ = [
    "discrepancy_function",
    "l2_exact",
    "l2_squared",
    "l2_prefix_values",
    "l2_quadrature_oracle",
    "prefix_inequality_check",
    "prefix_inequality_sweep",
]

_ROW_BLOCK = 256


def discrepancy_function(sigma: PointSet, gamma) -> float:
    """Fraction of points in ``[0, gamma)`` minus its volume.

    A point with a coordinate equal to ``gamma_k`` is outside the box.
    """
    g = np.asarray(tuple(gamma), dtype=np.float64)
    if g.shape != (sigma.dim,):
        raise ShapeError(f"gamma has {g.size} coordinates, point set has dim {sigma.dim}")
    if ((g < 0.0) | (g > 1.0)).any():
        raise DomainError(f"gamma = {tuple(g)} is outside [0, 1]^d")
    if sigma.count == 0:
        raise DomainError("point set is empty")
    inside = int((sigma.array < g).all(axis=1).sum())
    return inside / sigma.count - math.prod(g.tolist())


def _warnock_parts(x: np.ndarray):
    N, d = x.shape
    single = exact_sum(np.prod(1.0 - x * x, axis=1))
    partials = []
    for s in range(0, N, _ROW_BLOCK):
        rows = x[s:s + _ROW_BLOCK]
        prod = np.prod(1.0 - np.maximum(rows[:, None, :], x[None, :, :]), axis=2)
        partials.append(exact_sum(prod))
    return single, math.fsum(partials)


def l2_squared(sigma: PointSet) -> float:
    if sigma.count == 0:
        raise DomainError("point set is empty")
    x = sigma.array
    N, d = x.shape
    single, double = _warnock_parts(x)
    sq = math.fsum([3.0**-d, -(2.0 ** (1 - d)) * single / N, double / N**2])
    return max(sq, 0.0)


def l2_exact(sigma: PointSet) -> MeasureResult:
    """L2-discrepancy in closed form, ``O(N^2 d)``."""
    return MeasureResult(math.sqrt(l2_squared(sigma)), "closed-form")


def l2_prefix_values(sigma: PointSet) -> np.ndarray:
    """L2-discrepancy of every prefix ``n = 1..N`` in one incremental pass.

    Agrees with :func:`l2_exact` on each prefix to rounding.
    """
    if sigma.count == 0:
        raise DomainError("point set is empty")
    x = sigma.array
    N, d = x.shape
    singles = np.prod(1.0 - x * x, axis=1)
    single_terms: list = []
    double_terms: list = []
    out = np.empty(N)
    for n in range(N):
        row = np.prod(1.0 - np.maximum(x[n], x[: n + 1]), axis=1)
        double_terms.append(2.0 * exact_sum(row[:-1]) + float(row[-1]))
        single_terms.append(float(singles[n]))
        m = n + 1
        sq = math.fsum(
            [3.0**-d, -(2.0 ** (1 - d)) * math.fsum(single_terms) / m, math.fsum(double_terms) / m**2]
        )
        out[n] = math.sqrt(max(sq, 0.0))
    return out


def l2_quadrature_oracle(sigma: PointSet, grid_per_axis: int) -> float:
    """Tensor midpoint rule for ``int g^2``; independent of the closed form."""
    d = sigma.dim
    if d > 3:
        raise CapabilityError(f"quadrature oracle supports d <= 3, got d = {d}")
    if grid_per_axis < 1:
        raise DomainError("grid_per_axis must be positive")
    if sigma.count == 0:
        raise DomainError("point set is empty")
    G = int(grid_per_axis)
    N = sigma.count
    mids = (np.arange(G) + 0.5) / G
    # below[k][i, a] = point i lies left of midpoint a on axis k
    below = [(sigma.array[:, k][:, None] < mids[None, :]).astype(np.float64) for k in range(d)]
    if d == 1:
        counts = below[0].sum(axis=0)
        volume = mids
    elif d == 2:
        counts = below[0].T @ below[1]
        volume = np.multiply.outer(mids, mids)
    else:
        counts = np.einsum("ia,ib,ic->abc", *below, optimize=True)
        volume = np.multiply.outer(np.multiply.outer(mids, mids), mids)
    g = counts / N - volume
    return exact_sum(g * g) / G**d


def prefix_inequality_check(sigma: PointSet, n: int) -> VerificationReport:
    """``N L_N <= n L_n + N - n`` for the prefixes of ``sigma``."""
    N = sigma.count
    if not 1 <= n <= N:
        raise DomainError(f"n = {n} outside 1..{N}")
    lhs = N * l2_exact(sigma).value
    rhs = n * l2_exact(sigma.prefix(n)).value + (N - n)
    return VerificationReport("lemma-2", lhs, rhs, {"N": N, "n": n, "dim": sigma.dim})


def prefix_inequality_sweep(sigma: PointSet, max_N=None) -> list:
    """Reports for every pair ``1 <= n <= N <= max_N`` from one prefix profile."""
    top = sigma.count if max_N is None else min(int(max_N), sigma.count)
    values = l2_prefix_values(sigma.prefix(top))
    reports = []
    for N in range(1, top + 1):
        lhs = N * float(values[N - 1])
        for n in range(1, N + 1):
            rhs = n * float(values[n - 1]) + (N - n)
            reports.append(VerificationReport("lemma-2", lhs, rhs, {"N": N, "n": n, "dim": sigma.dim}))
    return reports
