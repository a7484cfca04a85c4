"""Classical (trigonometric) diaphony.

Two independent evaluations are offered. :func:`diaphony_truncated` sums
``|S_N(m)|^2 / R(m)^2`` over the box ``|m_i| <= M``; :func:`diaphony_exact`
uses the Bernoulli-polynomial identity

    sum_{m != 0} e(m t) / m^2 = 2 pi^2 B_2({t}),   B_2(t) = t^2 - t + 1/6,

which turns the lattice sum into a pairwise kernel.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .core import DomainError, LatticeIndex, MeasureResult, PointSet, ShapeError, exact_sum

__all__ = [
    "TruncationParams",
    "trig_sum",
    "weight_R",
    "diaphony_truncated",
    "diaphony_exact",
    "diaphony_prefix_squares",
    "pairwise_kernel",
    "bernoulli2",
    "fourier_A",
    "fourier_B",
    "tail_bound",
]

# lattice enumeration is used while (2M+1)^d * N stays below this
_DIRECT_LIMIT = 1 << 22
_ROW_BLOCK = 256


class TruncationParams:
    __slots__ = ("max_index",)

    def __init__(self, max_index: int):
        if int(max_index) != max_index or max_index < 1:
            raise DomainError(f"max_index must be a positive integer, got {max_index!r}")
        self.max_index = int(max_index)

    def __repr__(self):
        return f"TruncationParams(max_index={self.max_index})"


def _nonempty(sigma: PointSet) -> None:
    if sigma.count == 0:
        raise DomainError("point set is empty")


def trig_sum(sigma: PointSet, m) -> complex:
    """``(1/N) sum_i exp(2 pi i m . a_i)``."""
    m = m if isinstance(m, LatticeIndex) else LatticeIndex(tuple(m))
    if m.dim != sigma.dim:
        raise ShapeError(f"index has dim {m.dim}, point set has dim {sigma.dim}")
    _nonempty(sigma)
    phase = sigma.array @ np.asarray(m.components, dtype=np.float64)
    z = np.exp(2j * np.pi * phase)
    return complex(exact_sum(z.real), exact_sum(z.imag)) / sigma.count


def weight_R(m) -> int:
    comps = m.components if isinstance(m, LatticeIndex) else tuple(m)
    return math.prod(max(1, abs(int(c))) for c in comps)


def tail_bound(d: int, M: int) -> float:
    """Upper bound on the F^2 mass outside the box ``|m_i| <= M``."""
    partial = 1.0 + 2.0 * math.fsum(1.0 / (j * j) for j in range(1, M + 1))
    full = 1.0 + math.pi**2 / 3.0
    return max(full**d - partial**d, 0.0)


def _direct_square(sigma: PointSet, M: int) -> float:
    """Literal lattice sum over the box, excluding ``m = 0``."""
    d = sigma.dim
    ms = np.arange(-M, M + 1)
    weights_1d = 1.0 / np.maximum(1, np.abs(ms)).astype(np.float64) ** 2
    grids = np.meshgrid(*([ms] * d), indexing="ij")
    lattice = np.stack([g.ravel() for g in grids], axis=1)
    weights = np.ones(lattice.shape[0])
    for k in range(d):
        weights = weights * weights_1d[lattice[:, k] + M]
    phase = sigma.array @ lattice.T.astype(np.float64)
    S = np.exp(2j * np.pi * phase).mean(axis=0)
    terms = (S.real**2 + S.imag**2) * weights
    zero = np.flatnonzero((lattice == 0).all(axis=1))
    terms[zero] = 0.0
    return exact_sum(terms)


def _factorized_square(sigma: PointSet, M: int) -> float:
    """Same box sum via per-axis partial Fourier sums of each pair."""
    x = sigma.array
    N, d = x.shape
    m = np.arange(1, M + 1, dtype=np.float64)
    inv_sq = 1.0 / m**2
    block = max(1, (1 << 22) // (N * M))
    partials = []
    for start in range(0, N, block):
        rows = x[start:start + block]
        prod = None
        for k in range(d):
            t = rows[:, None, k] - x[None, :, k]
            series = 1.0 + 2.0 * (np.cos(2.0 * np.pi * t[..., None] * m) @ inv_sq)
            prod = series if prod is None else prod * series
        partials.append(exact_sum(prod - 1.0))
    return math.fsum(partials) / N**2


def diaphony_truncated(sigma: PointSet, trunc) -> MeasureResult:
    """Diaphony from the lattice series restricted to ``|m_i| <= M``.

    ``error_bound`` bounds the omitted part of ``value**2`` using
    ``|S_N| <= 1``.
    """
    _nonempty(sigma)
    M = trunc.max_index if isinstance(trunc, TruncationParams) else TruncationParams(trunc).max_index
    N, d = sigma.array.shape
    if (2 * M + 1) ** d * N <= _DIRECT_LIMIT:
        sq, route = _direct_square(sigma, M), "lattice"
    else:
        sq, route = _factorized_square(sigma, M), "pairwise-partial-sums"
    sq = max(sq, 0.0)
    return MeasureResult(
        math.sqrt(sq),
        "truncated-series",
        error_bound=tail_bound(d, M),
        params={"max_index": M, "route": route},
    )


def bernoulli2(t):
    return t * t - t + 1.0 / 6.0


def _frac(t):
    return t - np.floor(t)


def pairwise_kernel(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """``prod_k (1 + 2 pi^2 B_2({x_k - y_k})) - 1`` for all row/column pairs."""
    prod = np.ones((rows.shape[0], cols.shape[0]))
    for k in range(rows.shape[1]):
        t = _frac(rows[:, None, k] - cols[None, :, k])
        prod *= 1.0 + 2.0 * math.pi**2 * bernoulli2(t)
    return prod - 1.0


def _pair_square(x: np.ndarray) -> float:
    N = x.shape[0]
    partials = [
        exact_sum(pairwise_kernel(x[s:s + _ROW_BLOCK], x)) for s in range(0, N, _ROW_BLOCK)
    ]
    return math.fsum(partials) / N**2


def diaphony_exact(sigma: PointSet) -> MeasureResult:
    """Diaphony in closed form, ``O(N^2 d)``."""
    _nonempty(sigma)
    sq = max(_pair_square(sigma.array), 0.0)
    return MeasureResult(math.sqrt(sq), "closed-form")


def diaphony_prefix_squares(sigma: PointSet) -> np.ndarray:
    """``F_n^2`` for every prefix ``n = 1..N`` using one incremental pass."""
    _nonempty(sigma)
    x = sigma.array
    N = x.shape[0]
    out = np.empty(N)
    running = []
    for n in range(N):
        row = pairwise_kernel(x[n:n + 1], x[: n + 1])[0]
        # off-diagonal terms appear twice in the symmetric double sum
        running.append(2.0 * exact_sum(row[:-1]) + float(row[-1]))
        out[n] = max(math.fsum(running), 0.0) / (n + 1) ** 2
    return out


def fourier_A(m: int) -> complex:
    """``int_0^1 g e(-m g) dg``."""
    m = int(m)
    if m == 0:
        return complex(0.5)
    return -1.0 / (2j * math.pi * m)


def fourier_B(m: int, a: float) -> complex:
    """``int_a^1 e(-m g) dg`` for ``0 <= a < 1``."""
    if not 0.0 <= a < 1.0:
        raise DomainError(f"a = {a!r} is outside [0, 1)")
    m = int(m)
    if m == 0:
        return complex(1.0 - a)
    return (cmath.exp(-2j * math.pi * m * a) - 1.0) / (2j * math.pi * m)
