"""Test sequences and the reflection-symmetrisation of point sets.

Random points come from numpy's PCG64 (``numpy.random.Generator``), which is
specified bit-for-bit and gives identical streams on every platform.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import ConfigError, DomainError, PointSet

__all__ = [
    "GOLDEN_FRACTION",
    "GeneratorSpec",
    "radical_inverse",
    "generate",
    "symmetrize",
    "symmetric_prefix",
    "is_symmetric",
    "reflections",
]

GOLDEN_FRACTION = (math.sqrt(5.0) - 1.0) / 2.0

KINDS = ("van-der-corput", "kronecker", "hammersley-2d", "uniform-random")

_ALIASES = {
    "vdc": "van-der-corput",
    "hammersley": "hammersley-2d",
    "random": "uniform-random",
}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    count: int
    dim: int = 1
    seed: Optional[int] = None
    irrational: float = GOLDEN_FRACTION

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise ConfigError(f"unknown generator kind {self.kind!r}")
        if self.count < 1:
            raise ConfigError(f"count must be positive, got {self.count}")
        if self.dim < 1:
            raise ConfigError(f"dim must be positive, got {self.dim}")
        if kind in ("van-der-corput", "kronecker") and self.dim != 1:
            raise ConfigError(f"{kind} is one-dimensional, got dim={self.dim}")
        if kind == "hammersley-2d" and self.dim != 2:
            raise ConfigError(f"hammersley-2d needs dim=2, got dim={self.dim}")
        if kind == "uniform-random":
            if self.seed is None:
                raise ConfigError("uniform-random needs a seed")
            if not 0 <= int(self.seed) < 2**64:
                raise ConfigError("seed must be a 64-bit unsigned integer")
        if kind == "kronecker" and not 0.0 < self.irrational < 1.0:
            raise ConfigError(f"irrational must lie in (0, 1), got {self.irrational}")

    def with_count(self, count: int) -> "GeneratorSpec":
        return GeneratorSpec(self.kind, count, self.dim, self.seed, self.irrational)


def radical_inverse(indices) -> np.ndarray:
    """Base-2 radical inverse of non-negative integers (exact in float64)."""
    idx = np.asarray(indices, dtype=np.uint64)
    out = np.zeros(idx.shape, dtype=np.float64)
    scale = 0.5
    rest = idx.copy()
    while rest.any():
        out += (rest & np.uint64(1)).astype(np.float64) * scale
        rest >>= np.uint64(1)
        scale *= 0.5
    return out


def generate(spec: GeneratorSpec) -> PointSet:
    """Deterministic point set described by ``spec``."""
    n = np.arange(1, spec.count + 1)
    if spec.kind == "van-der-corput":
        return PointSet(radical_inverse(n - 1).reshape(-1, 1))
    if spec.kind == "kronecker":
        # frac(n * alpha) evaluated as a float product, then reduced.
        vals = np.mod(n.astype(np.float64) * spec.irrational, 1.0)
        return PointSet(vals.reshape(-1, 1))
    if spec.kind == "hammersley-2d":
        first = (n - 1).astype(np.float64) / spec.count
        return PointSet(np.column_stack([first, radical_inverse(n - 1)]))
    rng = np.random.Generator(np.random.PCG64(int(spec.seed)))
    return PointSet(rng.random((spec.count, spec.dim)))


def reflections(point) -> np.ndarray:
    """All ``2^d`` reflections of ``point`` in lexicographic tau order.

    Row ``t`` flips coordinate ``i`` to ``1 - x_i`` when bit ``d-1-i`` of ``t``
    is set, so ``(0,...,0)`` comes first and ``(1,...,1)`` last.
    """
    x = np.asarray(point, dtype=np.float64)
    d = x.shape[-1]
    taus = np.array(list(itertools.product((0, 1), repeat=d)), dtype=bool)
    return np.where(taus, 1.0 - x, x)


def _require_interior(sigma: PointSet) -> None:
    if not sigma.is_interior():
        r, c = map(int, np.argwhere(sigma.array == 0.0)[0])
        raise DomainError(
            f"row {r}, column {c}: coordinate 0 reflects to 1, outside [0, 1)"
        )


def symmetrize(sigma: PointSet) -> PointSet:
    """Symmetric sequence generated by ``sigma``.

    Each input point contributes one contiguous block of its ``2^d``
    reflections, so every block-aligned prefix is itself symmetric.
    """
    _require_interior(sigma)
    d = sigma.dim
    if sigma.count == 0:
        return PointSet(np.empty((0, d)), dim=d)
    blocks = [reflections(row) for row in sigma.array]
    return PointSet(np.vstack(blocks), dim=d)


def symmetric_prefix(sigma: PointSet, N: int) -> PointSet:
    """First ``N`` terms of the infinite symmetric sequence generated by ``sigma``.

    Whole blocks for the first ``N // 2^d`` generating points, then the
    leading reflections (tau order) of the next point.
    """
    d = sigma.dim
    p = 2**d
    n, rest = divmod(N, p)
    need = n + (1 if rest else 0)
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}")
    if sigma.count < need:
        raise DomainError(f"{N} symmetric terms need {need} generating points, got {sigma.count}")
    head = symmetrize(sigma.prefix(need))
    return head.prefix(N)


def is_symmetric(sigma: PointSet) -> bool:
    """True iff every point's ``2^d`` reflections occur with equal multiplicity.

    ``1 - x`` is exact in float64 for ``x >= 1/2`` but may round for
    ``x < 1/2``, so a reflection class is keyed by its upper-half
    representative and each member by which coordinates sit below 1/2.
    """
    arr = sigma.array
    if (arr == 0.0).any():
        # 1 - 0 = 1 is never a term of a set in [0, 1)^d
        return False
    low = arr < 0.5
    upper = np.where(low, 1.0 - arr, arr)
    classes: dict = {}
    for key, pattern in zip(map(tuple, upper.tolist()), map(tuple, low.tolist())):
        classes.setdefault(key, Counter())[pattern] += 1
    for key, patterns in classes.items():
        # coordinates equal to 1/2 are their own reflection
        free = [i for i, u in enumerate(key) if u != 0.5]
        expected = 2 ** len(free)
        if len(patterns) != expected or len(set(patterns.values())) != 1:
            return False
    return True
