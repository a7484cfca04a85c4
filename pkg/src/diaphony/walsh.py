"""Dyadic Walsh functions and the dyadic diaphony.

Every float64 in ``[0, 1)`` is a dyadic rational, so binary digits are read
off exactly. Scalar routines use Python integers (no digit budget);
vectorised routines use the top 64 binary digits and fall back to exact
integers for the rare pairs that agree on all 64.

The closed form used by :func:`dyadic_diaphony_exact` follows from the dyadic
Dirichlet kernel ``sum_{k < 2^a} wal_k(z) = 2^a [z < 2^-a]``: grouping
``k`` in blocks ``2^a <= k < 2^(a+1)`` gives

    phi(x, y) = sum_k r_2(k) wal_k(x) wal_k(y) = 3 - 6 * 2^-t

where ``t`` is the first binary digit on which ``x`` and ``y`` differ
(``phi = 3`` when ``x = y``).
"""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .core import (
    DomainError,
    MeasureResult,
    PointSet,
    ShapeError,
    WalshIndex,
    exact_sum,
)
from .generators import symmetrize

__all__ = [
    "WalshTruncation",
    "binary_digits",
    "dyadic_xor",
    "walsh_eval",
    "walsh_eval_multi",
    "walsh_matrix",
    "walsh_sum",
    "r2_weight",
    "dyadic_kernel",
    "dyadic_diaphony_truncated",
    "dyadic_diaphony_exact",
    "dyadic_tail_bound",
    "dyadic_prefix_squares",
    "walsh_integral_A",
    "walsh_integral_B",
    "fine_integral_J",
    "walsh_integral_A_quadrature",
    "walsh_coeff_discrepancy",
    "walsh_coeff_g0",
]

_DIRECT_LIMIT = 1 << 22
_ROW_BLOCK = 256


class WalshTruncation:
    __slots__ = ("max_power",)

    def __init__(self, max_power: int):
        if int(max_power) != max_power or max_power < 1:
            raise DomainError(f"max_power must be a positive integer, got {max_power!r}")
        self.max_power = int(max_power)

    def __repr__(self):
        return f"WalshTruncation(max_power={self.max_power})"


def _check_unit(x: float) -> float:
    x = float(x)
    if not 0.0 <= x < 1.0:
        raise DomainError(f"x = {x!r} is outside [0, 1)")
    return x


def _fraction_bits(x: float):
    """``(p, q)`` with ``x = p / 2^q`` exactly."""
    p, q = x.as_integer_ratio()
    return p, q.bit_length() - 1


def binary_digits(x: float, count: int) -> list:
    """First ``count`` binary digits ``x_1, x_2, ...`` of ``x`` (exact)."""
    p, q = _fraction_bits(_check_unit(x))
    return [(p >> (q - i)) & 1 if q >= i else 0 for i in range(1, count + 1)]


def dyadic_xor(x: float, y: float) -> float:
    """Digit-wise XOR of two dyadic rationals in ``[0, 1)``."""
    px, qx = _fraction_bits(_check_unit(x))
    py, qy = _fraction_bits(_check_unit(y))
    q = max(qx, qy)
    z = (px << (q - qx)) ^ (py << (q - qy))
    return math.ldexp(z, -q)


def walsh_eval(k: int, x: float) -> int:
    """``wal_k(x)`` in ``{-1, +1}``."""
    k = int(k)
    if k < 0:
        raise DomainError(f"Walsh index must be non-negative, got {k}")
    x = _check_unit(x)
    if k == 0:
        return 1
    p, q = _fraction_bits(x)
    parity = 0
    i = 0
    while k >> i:
        # digit x_{i+1} pairs with bit kappa_i of k
        if (k >> i) & 1 and q >= i + 1:
            parity ^= (p >> (q - i - 1)) & 1
        i += 1
    return -1 if parity else 1


def walsh_eval_multi(k, x) -> int:
    k = k if isinstance(k, WalshIndex) else WalshIndex(tuple(k))
    coords = tuple(x)
    if k.dim != len(coords):
        raise ShapeError(f"index has dim {k.dim}, point has dim {len(coords)}")
    out = 1
    for kj, xj in zip(k.components, coords):
        out *= walsh_eval(kj, xj)
    return out


def _top_bits(x: np.ndarray) -> np.ndarray:
    """``floor(x * 2^64)`` as uint64 (exact: scaling by 2^64 is exact)."""
    return np.floor(np.ldexp(x, 64)).astype(np.uint64)


def _reversed_digits(x: np.ndarray, K: int) -> np.ndarray:
    """Integer whose bit ``i`` is digit ``x_{i+1}``, for ``i < K``."""
    top = _top_bits(x)
    out = np.zeros(x.shape, dtype=np.uint64)
    for i in range(K):
        digit = (top >> np.uint64(63 - i)) & np.uint64(1)
        out |= digit << np.uint64(i)
    return out


def walsh_matrix(values: np.ndarray, K: int) -> np.ndarray:
    """``W[i, k] = wal_k(values[i])`` for ``k < 2^K`` as int8."""
    if K > 40:
        raise DomainError(f"max_power {K} is too large for a dense Walsh table")
    rev = _reversed_digits(np.asarray(values, dtype=np.float64), K)
    ks = np.arange(2**K, dtype=np.uint64)
    parity = np.bitwise_count(rev[:, None] & ks[None, :]) & np.uint8(1)
    return (1 - 2 * parity.astype(np.int8)).astype(np.int8)


def walsh_sum(sigma: PointSet, k) -> float:
    """``(1/N) sum_i wal_k(a_i)``."""
    k = k if isinstance(k, WalshIndex) else WalshIndex(tuple(k))
    if k.dim != sigma.dim:
        raise ShapeError(f"index has dim {k.dim}, point set has dim {sigma.dim}")
    if sigma.count == 0:
        raise DomainError("point set is empty")
    total = sum(walsh_eval_multi(k, row) for row in sigma.array.tolist())
    return total / sigma.count


def r2_weight(k) -> float:
    """``r_2(k)``: 1 for ``k = 0``, ``4^-a`` on ``2^a <= k < 2^(a+1)``; multiplicative."""
    comps = (k,) if isinstance(k, (int, np.integer)) else (
        k.components if isinstance(k, WalshIndex) else tuple(k)
    )
    out = 1.0
    for kj in comps:
        if kj < 0:
            raise DomainError(f"Walsh index must be non-negative, got {kj}")
        if kj:
            out *= 4.0 ** -(int(kj).bit_length() - 1)
    return out


def _r2_vector(K: int) -> np.ndarray:
    ks = np.arange(2**K, dtype=np.float64)
    _, bitlen = np.frexp(ks)
    w = np.ldexp(1.0, -2 * (bitlen - 1))
    w[0] = 1.0
    return w


def dyadic_tail_bound(d: int, K: int) -> float:
    """Bound on the omitted part of the squared dyadic diaphony."""
    return (3.0**d - (3.0 - 2.0 ** (1 - K)) ** d) / (3.0**d - 1.0)


def dyadic_diaphony_truncated(sigma: PointSet, trunc) -> MeasureResult:
    """Dyadic diaphony from the Walsh series with every ``k_j < 2^K``."""
    if sigma.count == 0:
        raise DomainError("point set is empty")
    K = trunc.max_power if isinstance(trunc, WalshTruncation) else WalshTruncation(trunc).max_power
    x = sigma.array
    N, d = x.shape
    r = _r2_vector(K)
    tables = [walsh_matrix(x[:, j], K) for j in range(d)]
    if N * 2 ** (K * d) <= _DIRECT_LIMIT:
        # literal series: walsh sums over the whole index box
        S = np.ones((N,) + (1,) * d)
        weights = np.ones((1,) * d)
        for j, W in enumerate(tables):
            shape = [1] * d
            shape[j] = 2**K
            S = S * W.astype(np.float64).reshape((N,) + tuple(shape))
            weights = weights * r.reshape(shape)
        sums = S.mean(axis=0)
        terms = weights * sums**2
        terms.flat[0] = 0.0
        sq, route = exact_sum(terms), "walsh-series"
    else:
        # same box sum via per-axis Gram matrices (exact: dyadic weights)
        prod = np.ones((N, N))
        for W in tables:
            Wf = W.astype(np.float64)
            prod *= (Wf * r) @ Wf.T
        sq, route = exact_sum(prod - 1.0) / N**2, "gram"
    sq = max(sq / (3.0**d - 1.0), 0.0)
    return MeasureResult(
        math.sqrt(sq),
        "truncated-series",
        error_bound=dyadic_tail_bound(d, K),
        params={"max_power": K, "route": route},
    )


def _highest_power(z: np.ndarray) -> np.ndarray:
    """Largest power of two ``<= z`` for uint64 ``z > 0`` (exact)."""
    z = z.copy()
    for s in (1, 2, 4, 8, 16, 32):
        z |= z >> np.uint64(s)
    return z ^ (z >> np.uint64(1))


def _exact_first_diff(x: float, y: float) -> float:
    """``2^-t`` for the first differing digit ``t`` of distinct x, y."""
    px, qx = _fraction_bits(x)
    py, qy = _fraction_bits(y)
    q = max(qx, qy)
    z = (px << (q - qx)) ^ (py << (q - qy))
    return math.ldexp(1.0, z.bit_length() - 1 - q)


def dyadic_kernel(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """``phi(x, y)`` for all pairs of 1-D coordinate arrays."""
    rows = np.asarray(rows, dtype=np.float64)
    cols = np.asarray(cols, dtype=np.float64)
    z = _top_bits(rows)[:, None] ^ _top_bits(cols)[None, :]
    power = np.zeros(z.shape)
    nz = z != 0
    power[nz] = np.ldexp(_highest_power(z[nz]).astype(np.float64), -64)
    deep = (~nz) & (rows[:, None] != cols[None, :])
    for i, j in zip(*np.nonzero(deep)):
        power[i, j] = _exact_first_diff(float(rows[i]), float(cols[j]))
    phi = 3.0 - 6.0 * power
    phi[~nz & ~deep] = 3.0
    return phi


def _dyadic_pair_block(rows: np.ndarray, x: np.ndarray) -> np.ndarray:
    prod = np.ones((rows.shape[0], x.shape[0]))
    for j in range(x.shape[1]):
        prod *= dyadic_kernel(rows[:, j], x[:, j])
    return prod - 1.0


def dyadic_diaphony_exact(sigma: PointSet) -> MeasureResult:
    """Dyadic diaphony from the closed-form pair kernel, ``O(N^2 d)``."""
    if sigma.count == 0:
        raise DomainError("point set is empty")
    x = sigma.array
    N, d = x.shape
    partials = [exact_sum(_dyadic_pair_block(x[s:s + _ROW_BLOCK], x)) for s in range(0, N, _ROW_BLOCK)]
    sq = max(math.fsum(partials) / N**2 / (3.0**d - 1.0), 0.0)
    return MeasureResult(math.sqrt(sq), "closed-form")


def dyadic_prefix_squares(sigma: PointSet) -> np.ndarray:
    """Squared dyadic diaphony of every prefix ``n = 1..N``."""
    if sigma.count == 0:
        raise DomainError("point set is empty")
    x = sigma.array
    N, d = x.shape
    out = np.empty(N)
    running = []
    for n in range(N):
        row = _dyadic_pair_block(x[n:n + 1], x[: n + 1])[0]
        running.append(2.0 * exact_sum(row[:-1]) + float(row[-1]))
        out[n] = max(math.fsum(running), 0.0) / (n + 1) ** 2 / (3.0**d - 1.0)
    return out


def _psi(k: int, x: float) -> float:
    """Nearer of the enclosing grid points at scale ``2^-n``, ``n = floor(log2 k)``.

    Ties (``x`` at the midpoint) go to the right end point.
    """
    n = k.bit_length() - 1
    scale = 2.0**n
    a = math.floor(x * scale) / scale
    b = a + 1.0 / scale
    return a if x - a < b - x else b


def _check_positive_index(k) -> int:
    if int(k) != k or k < 1:
        raise DomainError(f"index must be a positive integer, got {k!r}")
    return int(k)


def walsh_integral_A(k: int, x: float) -> float:
    """``int_x^1 wal_k(g) dg = wal_k(x) (psi_n - x)`` for ``k >= 1``."""
    k = _check_positive_index(k)
    x = _check_unit(x)
    return walsh_eval(k, x) * (_psi(k, x) - x)


def fine_integral_J(k: int, x: float) -> float:
    """``int_0^x wal_k(g) dg = wal_k(x) (x - psi_n)`` for ``k >= 1``."""
    k = _check_positive_index(k)
    x = _check_unit(x)
    return walsh_eval(k, x) * (x - _psi(k, x))


def walsh_integral_B(k: int) -> float:
    """``int_0^1 g wal_k(g) dg``: ``-2^(-n-2)`` when ``k = 2^n``, else 0.

    ``-J_k`` is a tent of area ``2^(-2n-2)`` on each cell of width ``2^-n``,
    signed by the lower digits of ``k``; those signs cancel unless ``k`` is a
    power of two.
    """
    k = _check_positive_index(k)
    if k & (k - 1):
        return 0.0
    return -math.ldexp(1.0, -(k.bit_length() - 1) - 2)


def _walsh_piecewise(k: int):
    # wal_k is constant on cells of width 2^-(n+1)
    cells = 2 ** k.bit_length()
    return cells, [walsh_eval(k, c / cells) for c in range(cells)]


def walsh_integral_A_quadrature(k: int, x: float) -> float:
    """Adaptive-quadrature value of ``int_x^1 wal_k``, cell boundaries as breakpoints."""
    k = _check_positive_index(k)
    x = _check_unit(x)
    cells, _ = _walsh_piecewise(k)
    points = [c / cells for c in range(1, cells) if c / cells > x]
    val, _err = integrate.quad(
        lambda g: walsh_eval(k, min(g, math.nextafter(1.0, 0.0))),
        x,
        1.0,
        points=points or None,
        limit=4 * cells + 50,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    return val


def walsh_coeff_discrepancy(sigma: PointSet, k) -> float:
    """Walsh coefficient of the discrepancy function of ``sigma``.

    ``int g wal_k = (1/N) sum_i prod_j int_{a_ij}^1 wal_{k_j} - prod_j int_0^1 g wal_{k_j}``
    with every one-dimensional integral in closed form.
    """
    k = k if isinstance(k, WalshIndex) else WalshIndex(tuple(k))
    if k.dim != sigma.dim:
        raise ShapeError(f"index has dim {k.dim}, point set has dim {sigma.dim}")
    if sigma.count == 0:
        raise DomainError("point set is empty")
    terms = []
    for row in sigma.array.tolist():
        prod = 1.0
        for kj, a in zip(k.components, row):
            prod *= (1.0 - a) if kj == 0 else walsh_integral_A(kj, a)
        terms.append(prod)
    volume_part = math.prod(0.5 if kj == 0 else walsh_integral_B(kj) for kj in k.components)
    return math.fsum(terms) / sigma.count - volume_part


def walsh_coeff_g0(sigma_n: PointSet) -> float:
    """Zeroth Walsh coefficient of the discrepancy function of ``symmetrize(sigma_n)``.

    Always zero (up to rounding): each reflection block integrates to one.
    """
    sym = symmetrize(sigma_n)
    return walsh_coeff_discrepancy(sym, (0,) * sym.dim)
