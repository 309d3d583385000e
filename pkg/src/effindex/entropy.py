"""Approximate entropy of a return series.

ApEn(m, r) = Phi^m - Phi^{m+1} with

    Phi^m = mean_i ln C_i^m,
    C_i^m = #{j : max-norm distance of the length-m templates at i, j <= r}
            / (N - m + 1),

self-matches included, which guarantees ApEn >= 0 and finite logs.  The
tolerance is r = r_factor * sd; by default sd is the sample standard
deviation of the input, and callers evaluating shuffled replicates pass the
original series' deviation explicitly (a permutation preserves it anyway).

The template-match counting is the O(n^2) hot loop of the whole pipeline and
runs through a numba kernel when numba is importable; the numpy fallback
produces bit-identical counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSeriesError, SeriesTooShortError

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None


@dataclass(frozen=True)
class ApEnConfig:
    """Embedding dimension and tolerance factor (canonical defaults 2, 0.2)."""

    embedding_dim: int = 2
    tolerance_factor: float = 0.2

    def __post_init__(self):
        if self.embedding_dim < 1:
            raise ValueError("embedding_dim must be >= 1")
        if self.tolerance_factor <= 0.0:
            raise ValueError("tolerance_factor must be positive")


@dataclass(frozen=True)
class ApEnEstimate:
    value: float


def _match_counts_numpy(x: np.ndarray, m: int, r: float):
    close = np.abs(x[:, None] - x[None, :]) <= r
    joint = close
    for offset in range(1, m):
        joint = np.logical_and(joint[:-1, :-1], close[offset:, offset:])
    counts_m = np.count_nonzero(joint, axis=1).astype(np.int64)
    joint = np.logical_and(joint[:-1, :-1], close[m:, m:])
    counts_m1 = np.count_nonzero(joint, axis=1).astype(np.int64)
    return counts_m, counts_m1


if njit is not None:

    @njit(cache=True)
    def _match_counts_jit(x, m, r):  # pragma: no cover - compiled
        n = x.shape[0]
        t1 = n - m + 1
        t2 = n - m
        counts_m = np.zeros(t1, np.int64)
        counts_m1 = np.zeros(t2, np.int64)
        for i in range(t1):
            hits = 0
            for j in range(t1):
                ok = True
                for o in range(m):
                    d = x[i + o] - x[j + o]
                    if d < 0.0:
                        d = -d
                    if d > r:
                        ok = False
                        break
                if ok:
                    hits += 1
                    if i < t2 and j < t2:
                        d = x[i + m] - x[j + m]
                        if d < 0.0:
                            d = -d
                        if d <= r:
                            counts_m1[i] += 1
            counts_m[i] = hits
        return counts_m, counts_m1

    def _match_counts(x, m, r):
        return _match_counts_jit(x, m, r)

else:
    _match_counts = _match_counts_numpy


def apen(
    returns: np.ndarray, cfg: ApEnConfig = ApEnConfig(), scale: float | None = None
) -> ApEnEstimate:
    """Approximate entropy of a series, in nats.

    Parameters
    ----------
    returns : array
        Series of length >= embedding_dim + 2.
    cfg : ApEnConfig
        Embedding dimension and tolerance factor.
    scale : float, optional
        Deviation to which the tolerance factor is applied.  Defaults to the
        sample standard deviation of ``returns``; pass the original series'
        value when scoring a shuffled replicate.
    """
    x = np.ascontiguousarray(returns, dtype=np.float64)
    m = cfg.embedding_dim
    n = x.size
    if n < m + 2:
        raise SeriesTooShortError(f"ApEn needs length >= {m + 2}, got {n}")
    if scale is None:
        scale = float(np.std(x, ddof=1))
    if scale <= 0.0:
        raise DegenerateSeriesError("zero standard deviation; tolerance would vanish")
    tolerance = cfg.tolerance_factor * scale
    counts_m, counts_m1 = _match_counts(x, m, tolerance)
    phi_m = float(np.mean(np.log(counts_m / (n - m + 1))))
    phi_m1 = float(np.mean(np.log(counts_m1 / (n - m))))
    value = phi_m - phi_m1
    # Self-matches bound every count away from zero, so the difference can
    # only go negative through rounding; snap exact-zero cases.
    if abs(value) < 5e-16:
        value = 0.0
    return ApEnEstimate(value)


def apen_upper_bound(n: int, cfg: ApEnConfig = ApEnConfig()) -> float:
    """Finite upper bound ln(N - m) implied by the defining counts."""
    return math.log(n - cfg.embedding_dim)
