"""Explicit constants of the diaphony / L2-discrepancy lower bounds.

All values are double-precision closed forms. ``log`` is the natural logarithm.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .core import DomainError

__all__ = [
    "PLANAR_L2_CONSTANT",
    "ConstantTable",
    "const_C",
    "const_alpha",
    "const_beta",
    "const_gamma",
    "const_delta",
    "const_mu",
    "constant_table",
    "diaphony_constant_bounds",
]

# 2-D L2 lower-bound constant, known only as this truncated literal
PLANAR_L2_CONSTANT = 0.0515599

_PI = math.pi


def _dim(d) -> int:
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"dimension must be a positive integer, got {d!r}")
    return int(d)


def const_C(d: int) -> float:
    """Diaphony-to-L2 factor for symmetrised sets."""
    d = _dim(d)
    return math.sqrt((1.0 - 3.0**-d) * ((1.0 + 6.0 / _PI**2) ** d - 1.0)) / 2.0 ** (d + 1)


def const_alpha(d: int) -> float:
    """L2 lower-bound constant in its original (weaker) form."""
    d = _dim(d)
    return 1.0 / (4.0 ** (d + 3) * (d * math.log(2.0)) ** (d / 2.0))


def const_beta(d: int) -> float:
    d = _dim(d)
    t = 3.0**d
    return 2.0 * _PI**d * math.sqrt(t / ((t - 1.0) * ((_PI**2 + 6.0) ** d - _PI ** (2 * d))))


def const_gamma(d: int) -> float:
    """Improved L2 lower-bound constant."""
    d = _dim(d)
    return 1.0 / (
        math.sqrt(21.0) * 2.0 ** (2 * d + 1) * math.sqrt(math.factorial(d)) * math.log(2.0) ** (d / 2.0)
    )


def const_delta(d: int) -> float:
    """Dyadic-diaphony-to-L2 factor for symmetrised sets."""
    d = _dim(d)
    return math.sqrt(3.0**d - 1.0)


def const_mu(d: int) -> float:
    d = _dim(d)
    return 1.0 / (2.0**d * math.sqrt(3.0**d - 1.0))


@dataclass(frozen=True)
class ConstantTable:
    d: int
    C: float
    alpha: float
    beta: float
    gamma: float
    delta: float
    mu: float
    hinrichs_larcher: float = PLANAR_L2_CONSTANT

    def to_dict(self) -> dict:
        return asdict(self)


def constant_table(d: int) -> ConstantTable:
    d = _dim(d)
    return ConstantTable(
        d=d,
        C=const_C(d),
        alpha=const_alpha(d),
        beta=const_beta(d),
        gamma=const_gamma(d),
        delta=const_delta(d),
        mu=const_mu(d),
    )


def diaphony_constant_bounds() -> dict:
    """Lower bounds for the one-dimensional diaphony constants."""
    return {
        "f_star_1986": const_alpha(1) * const_beta(1),
        "f_star_current": PLANAR_L2_CONSTANT * _PI,
        "f2_star_current": PLANAR_L2_CONSTANT * const_mu(1),
        "hinrichs_larcher": PLANAR_L2_CONSTANT,
    }
