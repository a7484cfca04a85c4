"""Shared value types: points, point sets, index vectors, results and reports.

Every type here is immutable. Point sets wrap a read-only ``(N, d)`` float64
array; coordinates live in the half-open cube ``[0, 1)^d``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

__all__ = [
    "UniformityError",
    "DomainError",
    "ShapeError",
    "ConfigError",
    "CapabilityError",
    "Point",
    "PointSet",
    "LatticeIndex",
    "WalshIndex",
    "HaarIndex",
    "MeasureResult",
    "VerificationReport",
    "METHODS",
    "validate_point_set",
    "read_point_set",
    "write_point_set",
    "format_point_set",
    "exact_sum",
]


class UniformityError(ValueError):
    """Base class for all errors raised by this package."""


class DomainError(UniformityError):
    """An argument lies outside the mathematical domain of the operation."""


class ShapeError(UniformityError):
    """Dimensions of the arguments do not agree."""


class ConfigError(UniformityError):
    """Inconsistent generator or run configuration."""


class CapabilityError(UniformityError):
    """The request is valid but deliberately unsupported (cost guard)."""


METHODS = ("closed-form", "truncated-series", "quadrature-oracle")


def exact_sum(values) -> float:
    """Correctly rounded sum of ``values`` in row-major order.

    ``math.fsum`` is exact up to the final rounding, so the result does not
    depend on summation order and is bit-reproducible.
    """
    arr = np.asarray(values, dtype=float)
    return math.fsum(arr.ravel().tolist())


@dataclass(frozen=True)
class Point:
    coords: tuple

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        if not coords:
            raise ShapeError("a point needs at least one coordinate")
        for i, c in enumerate(coords):
            if not (0.0 <= c < 1.0):
                raise DomainError(f"coordinate {i} = {c!r} is outside [0, 1)")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


class PointSet:
    """Ordered, immutable sequence of points in ``[0, 1)^d``.

    Order matters: prefixes are meaningful for the infinite-sequence
    statements. Build one with :func:`validate_point_set` or directly from an
    ``(N, d)`` array.
    """

    __slots__ = ("_array",)

    def __init__(self, array, dim: Optional[int] = None):
        arr = np.array(array, dtype=np.float64, copy=True)
        if arr.ndim == 1 and dim is None:
            arr = arr.reshape(-1, 1)
        if arr.size == 0:
            if dim is None or dim < 1:
                raise ShapeError("an empty point set needs an explicit dim >= 1")
            arr = arr.reshape(0, dim)
        if arr.ndim != 2:
            raise ShapeError(f"expected a 2-D array of points, got shape {arr.shape}")
        if arr.shape[1] < 1:
            raise ShapeError("points must have at least one coordinate")
        if dim is not None and arr.shape[1] != dim:
            raise ShapeError(f"dim={dim} does not match array width {arr.shape[1]}")
        bad = ~((arr >= 0.0) & (arr < 1.0))
        if bad.any():
            r, c = map(int, np.argwhere(bad)[0])
            raise DomainError(
                f"row {r}, column {c}: coordinate {arr[r, c]!r} is outside [0, 1)"
            )
        arr.setflags(write=False)
        self._array = arr

    @property
    def array(self) -> np.ndarray:
        """Read-only ``(N, d)`` coordinate array."""
        return self._array

    @property
    def dim(self) -> int:
        return self._array.shape[1]

    @property
    def count(self) -> int:
        return self._array.shape[0]

    @property
    def points(self) -> tuple:
        return tuple(Point(tuple(row)) for row in self._array.tolist())

    def __len__(self):
        return self.count

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return PointSet(self._array[i], dim=self.dim)
        return Point(tuple(self._array[i].tolist()))

    def prefix(self, n: int) -> "PointSet":
        if not 0 <= n <= self.count:
            raise DomainError(f"prefix length {n} outside 0..{self.count}")
        return PointSet(self._array[:n], dim=self.dim)

    def is_interior(self) -> bool:
        """True when every coordinate lies strictly inside ``(0, 1)``."""
        return bool((self._array > 0.0).all())

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._array.shape == other._array.shape and bool(
            np.array_equal(self._array, other._array)
        )

    def __hash__(self):
        return hash((self._array.shape, self._array.tobytes()))

    def __repr__(self):
        return f"PointSet(count={self.count}, dim={self.dim})"


def validate_point_set(raw: Sequence[Sequence[float]]) -> PointSet:
    """Turn coordinate rows into a :class:`PointSet`.

    Raises
    ------
    ShapeError
        If ``raw`` is empty or the rows are ragged.
    DomainError
        If a coordinate is outside ``[0, 1)``; the message names row and column.
    """
    rows = [list(r) for r in raw]
    if not rows:
        raise ShapeError("point set must contain at least one row")
    width = len(rows[0])
    if width == 0:
        raise ShapeError("row 0 is empty")
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ShapeError(f"row {r} has {len(row)} columns, expected {width}")
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            v = float(v)
            if not (0.0 <= v < 1.0):
                raise DomainError(f"row {r}, column {c}: coordinate {v!r} is outside [0, 1)")
    return PointSet(np.array(rows, dtype=np.float64))


def format_point_set(sigma: PointSet, digits: int = 17) -> str:
    buf = io.StringIO()
    for row in sigma.array.tolist():
        buf.write(",".join(f"{v:.{digits}g}" for v in row))
        buf.write("\n")
    return buf.getvalue()


def write_point_set(sigma: PointSet, path, digits: int = 17) -> None:
    """Write CSV, no header, one point per row (17 significant digits by default)."""
    Path(path).write_text(format_point_set(sigma, digits))


def read_point_set(path) -> PointSet:
    text = Path(path).read_text()
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(s.strip() for s in r)]
    try:
        parsed = [[float(s) for s in r] for r in rows]
    except ValueError as exc:
        raise ShapeError(f"{path}: non-numeric entry ({exc})") from None
    return validate_point_set(parsed)


def _int_tuple(values: Iterable[int], name: str) -> tuple:
    out = []
    for v in values:
        if isinstance(v, bool) or int(v) != v:
            raise ShapeError(f"{name} components must be integers, got {v!r}")
        out.append(int(v))
    if not out:
        raise ShapeError(f"{name} needs at least one component")
    return tuple(out)


@dataclass(frozen=True)
class LatticeIndex:
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", _int_tuple(self.components, "LatticeIndex"))

    @property
    def dim(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class WalshIndex:
    components: tuple

    def __post_init__(self):
        comps = _int_tuple(self.components, "WalshIndex")
        if any(k < 0 for k in comps):
            raise DomainError(f"Walsh indices are non-negative, got {comps}")
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class HaarIndex:
    """Tensor Haar index: ``shape`` (levels, each >= -1) and ``position``."""

    shape: tuple
    position: tuple

    def __post_init__(self):
        j = _int_tuple(self.shape, "HaarIndex.shape")
        m = _int_tuple(self.position, "HaarIndex.position")
        if len(j) != len(m):
            raise ShapeError(f"shape has {len(j)} axes but position has {len(m)}")
        for i, (ji, mi) in enumerate(zip(j, m)):
            if ji < -1:
                raise DomainError(f"axis {i}: level {ji} < -1")
            if ji == -1 and mi != 0:
                raise DomainError(f"axis {i}: level -1 requires position 0, got {mi}")
            if ji >= 0 and not 0 <= mi < 2**ji:
                raise DomainError(f"axis {i}: position {mi} outside 0..{2**ji - 1}")
        object.__setattr__(self, "shape", j)
        object.__setattr__(self, "position", m)

    @property
    def dim(self) -> int:
        return len(self.shape)

    @property
    def order(self) -> int:
        """``|j|``: sum of the non-negative levels."""
        return sum(max(0, ji) for ji in self.shape)


@dataclass(frozen=True)
class MeasureResult:
    """A measure value with its provenance.

    ``error_bound`` is present exactly for truncated series; it bounds the
    mass missing from ``value**2``.
    """

    value: float
    method: str
    error_bound: Optional[float] = None
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}")
        if not self.value >= 0:
            raise DomainError(f"measure value must be non-negative, got {self.value!r}")
        if (self.error_bound is not None) != (self.method == "truncated-series"):
            raise ConfigError("error_bound is required for, and only for, truncated series")
        if self.error_bound is not None and not self.error_bound >= 0:
            raise DomainError("error_bound must be non-negative")
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "params", dict(self.params))

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "error_bound": self.error_bound,
            "params": dict(self.params),
        }


@dataclass(frozen=True)
class VerificationReport:
    """One checked inequality ``lhs <= rhs``; ``holds`` has no tolerance slack."""

    theorem_id: str
    lhs: float
    rhs: float
    inputs: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "lhs", float(self.lhs))
        object.__setattr__(self, "rhs", float(self.rhs))
        object.__setattr__(self, "inputs", dict(self.inputs))

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def near_violation(self) -> bool:
        """Margins under 1e-12 deserve a floating-point review."""
        return abs(self.margin) < 1e-12 and self.lhs != self.rhs

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "near_violation": self.near_violation,
            "inputs": dict(self.inputs),
        }
