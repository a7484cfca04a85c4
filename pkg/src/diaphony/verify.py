"""Numerical checks of the diaphony / L2-discrepancy inequalities.

Every ``check_*`` returns a :class:`~diaphony.core.VerificationReport` whose
``holds`` flag compares exact floating-point values without slack. The
statements about ``limsup`` of infinite sequences cannot be falsified on a
finite prefix; :func:`track_ratio` only records the running maximum of
``N F_N / sqrt(log N)`` as a lower estimate of such a limsup.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import constants
from .core import ConfigError, DomainError, PointSet, VerificationReport
from .generators import GeneratorSpec, generate, symmetric_prefix, symmetrize
from .l2disc import l2_exact, prefix_inequality_check
from .trig import diaphony_exact, diaphony_prefix_squares
from .walsh import dyadic_diaphony_exact, dyadic_prefix_squares

__all__ = [
    "THEOREMS",
    "TRACK_NOTE",
    "TrackRecord",
    "check_theorem1",
    "check_theorem2",
    "check_theorem8",
    "check_theorem9",
    "check_lower_bound_l2",
    "check_lower_bound_diaphony",
    "track_ratio",
    "random_trials",
]

THEOREMS = ("1", "2", "8", "9", "A", "B", "4", "10", "lemma2")

TRACK_NOTE = (
    "running_max is a finite-prefix lower estimate of limsup N F_N / sqrt(log N); "
    "it is not a value of the asymptotic constant"
)


def _interior(sigma: PointSet) -> None:
    if not sigma.is_interior():
        raise DomainError("generating points must lie strictly inside (0, 1)^d")


def _symmetrised_check(theorem_id, sigma_n, factor, measure):
    _interior(sigma_n)
    d = sigma_n.dim
    lhs = l2_exact(symmetrize(sigma_n)).value
    F = measure(sigma_n).value
    return VerificationReport(
        theorem_id,
        lhs,
        factor(d) * F,
        {"dim": d, "n": sigma_n.count, "N": 2**d * sigma_n.count, "diaphony": F},
    )


def check_theorem1(sigma_n: PointSet) -> VerificationReport:
    """``L2(symmetrised) <= C(d) F_n(sigma_n)``."""
    return _symmetrised_check("theorem-1", sigma_n, constants.const_C, diaphony_exact)


def check_theorem8(sigma_n: PointSet) -> VerificationReport:
    """``L2(symmetrised) <= delta(d) F_{2,n}(sigma_n)``."""
    return _symmetrised_check("theorem-8", sigma_n, constants.const_delta, dyadic_diaphony_exact)


def _prefix_check(theorem_id, sigma, N, factor, measure):
    d = sigma.dim
    p = 2**d
    if N < p:
        raise DomainError(f"N = {N} must be at least 2^d = {p}")
    n, rest = divmod(N, p)
    used = sigma.prefix(min(sigma.count, n + (1 if rest else 0)))
    _interior(used)
    lhs = l2_exact(symmetric_prefix(sigma, N)).value
    F = measure(sigma.prefix(n)).value
    return VerificationReport(
        theorem_id,
        lhs,
        factor(d) * F + (p - 1) / N,
        {"dim": d, "N": N, "n": n, "diaphony": F},
    )


def check_theorem2(sigma: PointSet, N: int) -> VerificationReport:
    """``L2_N(symmetric sequence) <= C(d) F_n(sigma) + (2^d - 1)/N``, ``n = N // 2^d``."""
    return _prefix_check("theorem-2", sigma, N, constants.const_C, diaphony_exact)


def check_theorem9(sigma: PointSet, N: int) -> VerificationReport:
    """Dyadic analogue of :func:`check_theorem2` with ``delta(d)``."""
    return _prefix_check("theorem-9", sigma, N, constants.const_delta, dyadic_diaphony_exact)


def _log_factor(N: int, d: int) -> float:
    if N < 2:
        raise DomainError(f"lower bounds need N >= 2, got N = {N}")
    return math.log(N) ** ((d - 1) / 2.0) / N


def check_lower_bound_l2(sigma: PointSet, which: str) -> VerificationReport:
    """L2 lower bound of order ``(log N)^((d-1)/2) / N``: ``theorem-A`` or ``theorem-B``."""
    d, N = sigma.dim, sigma.count
    if d < 2:
        raise DomainError(f"L2 lower bounds need d >= 2, got d = {d}")
    if which == "theorem-A":
        bound = constants.const_gamma(d - 1) * _log_factor(N, d)
    elif which == "theorem-B":
        if d != 2:
            raise DomainError(f"theorem-B is two-dimensional, got d = {d}")
        bound = constants.PLANAR_L2_CONSTANT * _log_factor(N, d)
    else:
        raise ConfigError(f"unknown L2 lower bound {which!r}")
    return VerificationReport(which, bound, l2_exact(sigma).value, {"dim": d, "N": N})


def check_lower_bound_diaphony(sigma: PointSet, which: str) -> VerificationReport:
    """Finite-N diaphony lower bounds: ``theorem-4`` (classical) or ``theorem-10`` (dyadic)."""
    d, N = sigma.dim, sigma.count
    if d < 2:
        raise DomainError(f"diaphony lower bounds need d >= 2, got d = {d}")
    if which == "theorem-4":
        const = constants.const_alpha(d - 1) * constants.const_beta(d)
        measured = diaphony_exact(sigma).value
    elif which == "theorem-10":
        const = constants.const_gamma(d - 1) * constants.const_mu(d)
        measured = dyadic_diaphony_exact(sigma).value
    else:
        raise ConfigError(f"unknown diaphony lower bound {which!r}")
    return VerificationReport(which, const * _log_factor(N, d), measured, {"dim": d, "N": N})


@dataclass(frozen=True)
class TrackRecord:
    """One prefix of a tracked sequence; ``running_max`` estimates a limsup from below."""

    N: int
    F: float
    ratio: float
    running_max: float


def track_ratio(spec: GeneratorSpec, max_N: int, measure: str = "diaphony") -> list:
    """``N F_N / sqrt(log N)`` for ``N = 2..max_N`` and its running maximum."""
    if max_N < 2:
        raise DomainError(f"max_N must be at least 2, got {max_N}")
    if spec.dim != 1:
        raise ConfigError("track_ratio expects a one-dimensional generator")
    sigma = generate(spec.with_count(max_N))
    if measure == "diaphony":
        squares = diaphony_prefix_squares(sigma)
    elif measure == "dyadic":
        squares = dyadic_prefix_squares(sigma)
    else:
        raise ConfigError(f"unknown measure {measure!r}")
    records = []
    best = -math.inf
    for N in range(2, max_N + 1):
        F = math.sqrt(float(squares[N - 1]))
        ratio = N * F / math.sqrt(math.log(N))
        best = max(best, ratio)
        records.append(TrackRecord(N, F, ratio, best))
    return records


def _interior_random(rng: np.random.Generator, n: int, d: int) -> PointSet:
    pts = rng.random((n, d))
    while (pts == 0.0).any():
        pts = np.where(pts == 0.0, rng.random((n, d)), pts)
    return PointSet(pts)


def random_trials(theorem: str, d: int, trials: int, seed: int) -> list:
    """Seeded sweep of one check; trial ``t`` is reproducible from ``(seed, t)``.

    Generating sets have 1..16 points; prefix checks and lower bounds use
    up to 256 terms.
    """
    if theorem not in THEOREMS:
        raise ConfigError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    if trials < 1:
        raise ConfigError("trials must be positive")
    reports = []
    for t in range(trials):
        rng = np.random.Generator(np.random.PCG64([int(seed), t]))
        if theorem in ("1", "8"):
            sigma = _interior_random(rng, int(rng.integers(1, 17)), d)
            check = check_theorem1 if theorem == "1" else check_theorem8
            reports.append(check(sigma))
        elif theorem in ("2", "9"):
            n0 = int(rng.integers(1, 17))
            sigma = _interior_random(rng, n0, d)
            N = int(rng.integers(2**d, 2**d * n0 + 1))
            check = check_theorem2 if theorem == "2" else check_theorem9
            reports.append(check(sigma, N))
        elif theorem in ("A", "B"):
            sigma = _interior_random(rng, int(rng.integers(2, 257)), d)
            reports.append(check_lower_bound_l2(sigma, f"theorem-{theorem}"))
        elif theorem in ("4", "10"):
            sigma = _interior_random(rng, int(rng.integers(2, 257)), d)
            reports.append(check_lower_bound_diaphony(sigma, f"theorem-{theorem}"))
        else:
            sigma = _interior_random(rng, int(rng.integers(1, 65)), d)
            reports.append(prefix_inequality_check(sigma, int(rng.integers(1, sigma.count + 1))))
    return reports
