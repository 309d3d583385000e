"""Canonical series types, log transforms, and seeded shuffling.

Price observations enter as a :class:`PriceSeries`.  Everything downstream
works on plain float arrays: log-returns (length ``n - 1``) feed the
long-memory and entropy estimators, log-prices feed the roughness
estimators.  :class:`SeedSpec` makes the resampling loop reproducible and
order-independent: replicate ``k`` always sees the same permutation no
matter how replicates are scheduled.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import SeriesValidationError

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    """64-bit avalanche mix (splitmix64 finalizer)."""
    z &= _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


def _label_hash(label: str) -> int:
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@dataclass(frozen=True)
class SeedSpec:
    """Base seed plus the derivation rule for replicate streams.

    Replicate ``k`` uses ``mix64(base_seed + (k + 1) * golden)``, so streams
    are independent and identical regardless of evaluation order.  Panels
    additionally fold the series label into the base seed via
    :meth:`for_label`, which keeps per-series results independent of which
    other series happen to be in the file.
    """

    base_seed: int = 0

    def __post_init__(self):
        if not 0 <= self.base_seed <= _MASK64:
            raise ValueError("base_seed must fit in 64 unsigned bits")

    def for_label(self, label: str) -> "SeedSpec":
        return SeedSpec(_mix64(self.base_seed ^ _label_hash(label)))

    def derive(self, replicate: int) -> int:
        if replicate < 0:
            raise ValueError("replicate index must be >= 0")
        return _mix64(self.base_seed + (replicate + 1) * _GOLDEN)

    def rng(self, replicate: int = 0) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.derive(replicate)))


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """A labelled, strictly positive price path on an increasing date axis."""

    label: str
    dates: tuple
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dates", tuple(self.dates))
        if values.ndim != 1 or len(values) < 2:
            raise SeriesValidationError(
                f"series {self.label!r}: need at least 2 observations, got {values.size}"
            )
        if len(self.dates) != len(values):
            raise SeriesValidationError(
                f"series {self.label!r}: {len(self.dates)} dates vs {len(values)} values"
            )
        bad = np.flatnonzero(~np.isfinite(values) | (values <= 0.0))
        if bad.size:
            i = int(bad[0])
            raise SeriesValidationError(
                f"series {self.label!r}: non-positive or non-finite price "
                f"{values[i]!r} at index {i}"
            )
        for i in range(1, len(self.dates)):
            if not self.dates[i] > self.dates[i - 1]:
                raise SeriesValidationError(
                    f"series {self.label!r}: dates not strictly increasing at index {i}"
                )

    def __len__(self) -> int:
        return len(self.values)


def _as_price_values(prices) -> np.ndarray:
    if isinstance(prices, PriceSeries):
        return prices.values
    values = np.asarray(prices, dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(values) | (values <= 0.0))
    if bad.size:
        i = int(bad[0])
        raise SeriesValidationError(
            f"non-positive or non-finite price {values[i]!r} at index {i}"
        )
    return values


def log_prices(prices) -> np.ndarray:
    """Element-wise natural log of a price path."""
    return np.log(_as_price_values(prices))


def log_returns(prices) -> np.ndarray:
    """Log-returns ``ln(P[t+1]) - ln(P[t])``, length ``n - 1``."""
    values = _as_price_values(prices)
    if len(values) < 2:
        raise SeriesValidationError("need at least 2 prices to form returns")
    return np.diff(np.log(values))


def shuffle_returns(returns: np.ndarray, seed: SeedSpec, replicate: int) -> np.ndarray:
    """Uniformly random permutation of the return vector for one replicate.

    Deterministic in ``(seed, replicate)``; the value multiset is preserved
    exactly.
    """
    returns = np.asarray(returns, dtype=np.float64)
    if returns.size == 0:
        raise SeriesValidationError("cannot shuffle an empty return series")
    return seed.rng(replicate).permutation(returns)


def rebuild_log_prices(returns: np.ndarray, anchor: float) -> np.ndarray:
    """Cumulate returns into a log-price path starting at ``anchor``."""
    returns = np.asarray(returns, dtype=np.float64)
    out = np.empty(returns.size + 1)
    out[0] = anchor
    out[1:] = anchor + np.cumsum(returns)
    return out
