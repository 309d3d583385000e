"""Fractal dimension of a log-price path: Hall-Wood and Genton estimators.

Both are two-scale box estimators on the lag set {1, 2}, the variant
recommended for short series.  Hall-Wood uses absolute increments:

    A(l) = (l / n) * sum_{i=1..floor(n/l)} |lp[i l] - lp[(i-1) l]|,   n = len - 1
    D    = 2 - (ln A(2) - ln A(1)) / ln 2

Genton replaces the increment scale with the square of the highly robust
pairwise Qn statistic:

    V(l) = Qn({lp[i+l] - lp[i]})^2
    D    = 2 - (ln V(2) - ln V(1)) / (2 ln 2)

Raw values are clamped to [1, 2] with a flag; the clamp keeps the index
aggregation bounded while sampling noise can push the regression outside.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePathError, SeriesTooShortError

# Gaussian consistency factor for Qn.  It cancels in the dimension formula
# (ratio of two Qn values) but keeps V(l) interpretable as a variance.
QN_CONSISTENCY = 2.2191

_SCALES = (1, 2)


@dataclass(frozen=True)
class FractalDimEstimate:
    estimator: str
    d: float
    clamped: bool = False
    scales: tuple = _SCALES


def _kth_pair_diff(sorted_x: np.ndarray, k: int) -> float:
    """k-th smallest of {x[j] - x[i] : i < j} on an ascending array.

    Value bisection with an exact candidate sweep at the end: the result is
    always an achieved pairwise difference, bit-identical to what the naive
    O(p^2) enumeration selects.
    """
    n = sorted_x.size
    ar = np.arange(n)

    def count_le(t: float) -> int:
        idx = np.searchsorted(sorted_x, sorted_x - t, side="left")
        return int((ar - idx).sum())

    lo = 0.0
    hi = float(sorted_x[-1] - sorted_x[0])
    c_lo = count_le(lo)
    if c_lo >= k:
        return 0.0
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # No representable value strictly inside the bracket: the k-th
            # difference can only be hi itself.
            return hi
        c_mid = count_le(mid)
        if c_mid >= k:
            hi = mid
        else:
            lo = mid
            c_lo = c_mid
        if count_le(hi) - c_lo <= 50_000:
            lo_idx = np.searchsorted(sorted_x, sorted_x - hi, side="left")
            hi_idx = np.searchsorted(sorted_x, sorted_x - lo, side="left")
            starts = np.minimum(lo_idx, ar)
            stops = np.minimum(hi_idx, ar)
            counts = stops - starts
            total = int(counts.sum())
            if total == 0:
                continue
            j_idx = np.repeat(ar, counts)
            cum = np.cumsum(counts)
            i_idx = np.repeat(starts, counts) + (np.arange(total) - np.repeat(cum - counts, counts))
            diffs = sorted_x[j_idx] - sorted_x[i_idx]
            rank = k - c_lo
            return float(np.partition(diffs, rank - 1)[rank - 1])


def qn_scale(x: np.ndarray) -> float:
    """Robust Qn scale: 2.2191 times the k-th smallest pairwise |difference|.

    k = C(h, 2) with h = floor(len/2) + 1.  Permutation invariant by
    construction (the input is sorted first).
    """
    x = np.asarray(x, dtype=np.float64)
    if x.size < 2:
        raise ValueError("Qn needs at least 2 observations")
    h = x.size // 2 + 1
    k = h * (h - 1) // 2
    return QN_CONSISTENCY * _kth_pair_diff(np.sort(x), k)


def _check_path(log_prices: np.ndarray) -> np.ndarray:
    lp = np.asarray(log_prices, dtype=np.float64)
    if lp.size < 8:
        raise SeriesTooShortError(f"fractal estimators need length >= 8, got {lp.size}")
    return lp


def _clamp(name: str, raw: float) -> FractalDimEstimate:
    clamped = not 1.0 <= raw <= 2.0
    return FractalDimEstimate(name, min(2.0, max(1.0, raw)), clamped=clamped)


def hall_wood(log_prices: np.ndarray) -> FractalDimEstimate:
    """Hall-Wood fractal dimension of a log-price path."""
    lp = _check_path(log_prices)
    n = lp.size - 1
    a = []
    for lag in _SCALES:
        blocks = n // lag
        incr = lp[lag :: lag][:blocks] - lp[0 :: lag][:blocks]
        total = float(np.abs(incr).sum()) * lag / n
        if total <= 0.0:
            raise DegeneratePathError(f"zero absolute variation at lag {lag}")
        a.append(total)
    raw = 2.0 - (np.log(a[1]) - np.log(a[0])) / np.log(2.0)
    return _clamp("hall_wood", float(raw))


def genton(log_prices: np.ndarray) -> FractalDimEstimate:
    """Genton (robust variogram) fractal dimension of a log-price path."""
    lp = _check_path(log_prices)
    v = []
    for lag in _SCALES:
        incr = lp[lag:] - lp[:-lag]
        scale = qn_scale(incr)
        if scale <= 0.0:
            raise DegeneratePathError(f"zero robust increment scale at lag {lag}")
        v.append(scale * scale)
    raw = 2.0 - (np.log(v[1]) - np.log(v[0])) / (2.0 * np.log(2.0))
    return _clamp("genton", float(raw))
