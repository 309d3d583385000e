"""Efficiency index: aggregation, shuffle inference, contribution shares.

The index is the Euclidean distance of the normalized measure deviations
from a baseline:

    EI = sqrt( sum_i ((M_i - B_i) / R_i)^2 )

with ranges R = 1 for the Hurst and fractal-dimension terms and R = 2 for
the entropy term.  The baseline is either the classic efficient-market
constants (H 0.5, D 1.5, ApEn 1) or, in the inference procedure, the
measures of a shuffled replicate, which absorbs finite-sample and
distributional bias.

Inference on one series: estimate the measures once on the original data
(returns feed the Hurst and entropy estimators, log-prices the fractal
ones), then for each replicate shuffle the returns, rebuild a log-price path
from the shuffled returns anchored at the original starting log-price,
re-estimate, and score the original against the replicate.  The reported
index is the median of the replicate draws and the quoted error is the
sample standard deviation of the draws.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .entropy import ApEnConfig, ApEnEstimate, apen
from .errors import EffindexError, ReplicateFailureError
from .fractal import FractalDimEstimate, genton, hall_wood
from .lrd import HurstEstimate, LrdConfig, gph, local_whittle
from .series import PriceSeries, SeedSpec, log_returns, rebuild_log_prices, shuffle_returns
from .spectral import periodogram

RANGE_HURST = 1.0
RANGE_FRACTAL = 1.0
RANGE_ENTROPY = 2.0

MODES = ("average", "per-estimator")


@dataclass(frozen=True)
class ClassicBaseline:
    """Textbook efficient-market values (entropy pre-normalized to 1)."""

    h: float = 0.5
    d: float = 1.5
    apen: float = 1.0


@dataclass(frozen=True)
class MeasureSet:
    """The five raw estimates for one series."""

    h_lw: HurstEstimate
    h_gph: HurstEstimate
    d_hw: FractalDimEstimate
    d_g: FractalDimEstimate
    apen: ApEnEstimate

    def __post_init__(self):
        for value in (self.h_lw.h, self.h_gph.h, self.d_hw.d, self.d_g.d, self.apen.value):
            if not np.isfinite(value):
                raise ValueError("measure set contains a non-finite estimate")


@dataclass(frozen=True)
class EIConfig:
    """Aggregation mode, shuffle count, and estimator settings.

    ``mode='average'`` averages the two Hurst estimates and the two fractal
    estimates before aggregation (three terms); ``mode='per-estimator'``
    keeps all five terms.  Both appear in the output metadata.
    """

    mode: str = "average"
    shuffles: int = 100
    lrd: LrdConfig = field(default_factory=LrdConfig)
    apen: ApEnConfig = field(default_factory=ApEnConfig)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.shuffles < 2:
            raise ValueError("shuffles must be >= 2")

    def fingerprint(self) -> dict:
        return {
            "mode": self.mode,
            "shuffles": self.shuffles,
            "bandwidth_exponent": self.lrd.bandwidth_exponent,
            "apen_m": self.apen.embedding_dim,
            "apen_r": self.apen.tolerance_factor,
        }


@dataclass(frozen=True, eq=False)
class EIEstimate:
    """Median index, draw dispersion, and contribution shares for a series."""

    median: float
    standard_error: float
    draws: np.ndarray
    contributions: np.ndarray  # shares (hurst, fractal, entropy), sum 1
    measures: MeasureSet
    n_obs: int


def estimate_measures(
    returns: np.ndarray,
    logprices: np.ndarray,
    cfg: EIConfig = EIConfig(),
    apen_scale: float | None = None,
) -> MeasureSet:
    """All five raw measures for one series (returns + log-price path)."""
    pg = periodogram(returns)
    return MeasureSet(
        h_lw=local_whittle(returns, cfg.lrd, pg=pg),
        h_gph=gph(returns, cfg.lrd, pg=pg),
        d_hw=hall_wood(logprices),
        d_g=genton(logprices),
        apen=apen(returns, cfg.apen, scale=apen_scale),
    )


def squared_terms(m: MeasureSet, baseline, cfg: EIConfig = EIConfig()) -> np.ndarray:
    """Squared normalized deviations per factor: (hurst, fractal, entropy).

    ``baseline`` is a MeasureSet (shuffle inference) or a ClassicBaseline.
    """
    classic = isinstance(baseline, ClassicBaseline)
    b_ae = baseline.apen if classic else baseline.apen.value
    sq_ae = ((m.apen.value - b_ae) / RANGE_ENTROPY) ** 2
    if cfg.mode == "average":
        m_h = 0.5 * (m.h_lw.h + m.h_gph.h)
        m_d = 0.5 * (m.d_hw.d + m.d_g.d)
        b_h = baseline.h if classic else 0.5 * (baseline.h_lw.h + baseline.h_gph.h)
        b_d = baseline.d if classic else 0.5 * (baseline.d_hw.d + baseline.d_g.d)
        sq_h = ((m_h - b_h) / RANGE_HURST) ** 2
        sq_d = ((m_d - b_d) / RANGE_FRACTAL) ** 2
    else:
        b_lw = baseline.h if classic else baseline.h_lw.h
        b_gph = baseline.h if classic else baseline.h_gph.h
        b_hw = baseline.d if classic else baseline.d_hw.d
        b_g = baseline.d if classic else baseline.d_g.d
        sq_h = ((m.h_lw.h - b_lw) / RANGE_HURST) ** 2 + ((m.h_gph.h - b_gph) / RANGE_HURST) ** 2
        sq_d = ((m.d_hw.d - b_hw) / RANGE_FRACTAL) ** 2 + ((m.d_g.d - b_g) / RANGE_FRACTAL) ** 2
    return np.array([sq_h, sq_d, sq_ae])


def ei_point(m: MeasureSet, baseline, cfg: EIConfig = EIConfig()) -> float:
    """One index value: distance of the measures from the baseline."""
    return float(np.sqrt(squared_terms(m, baseline, cfg).sum()))


def contribution_shares(components: np.ndarray) -> np.ndarray:
    """Median per-factor share of the squared deviations, renormalized.

    ``components`` holds one row of squared terms per replicate.  A replicate
    with an all-zero deviation vector contributes equal shares.
    """
    components = np.atleast_2d(np.asarray(components, dtype=np.float64))
    totals = components.sum(axis=1)
    shares = np.full_like(components, 1.0 / 3.0)
    nz = totals > 0.0
    shares[nz] = components[nz] / totals[nz, None]
    med = np.median(shares, axis=0)
    total = med.sum()
    if total <= 0.0:
        return np.full(3, 1.0 / 3.0)
    return med / total


def ei_inference(prices: PriceSeries, cfg: EIConfig = EIConfig(), seed: SeedSpec = SeedSpec()) -> EIEstimate:
    """Shuffle-resampling estimate of the efficiency index for one series.

    Replicates draw their permutation stream from the seed mixed with the
    series label, so panel results do not depend on evaluation order or on
    which other series are present.  A replicate whose estimation degenerates
    is dropped and redrawn with the next derived stream; if fewer than
    ``cfg.shuffles`` replicates succeed within twice that many attempts the
    series is marked failed.
    """
    returns = log_returns(prices)
    logprices = np.log(prices.values)
    apen_scale = float(np.std(returns, ddof=1))
    original = estimate_measures(returns, logprices, cfg, apen_scale=apen_scale)

    series_seed = seed.for_label(prices.label)
    wanted = cfg.shuffles
    draws = np.empty(wanted)
    components = np.empty((wanted, 3))
    successes = 0
    attempts = 0
    last_error: Exception | None = None
    while successes < wanted and attempts < 2 * wanted:
        attempts += 1
        try:
            shuffled = shuffle_returns(returns, series_seed, attempts)
            rebuilt = rebuild_log_prices(shuffled, anchor=logprices[0])
            baseline = estimate_measures(shuffled, rebuilt, cfg, apen_scale=apen_scale)
        except EffindexError as exc:
            last_error = EffindexError(f"replicate {attempts}: {exc}")
            continue
        terms = squared_terms(original, baseline, cfg)
        components[successes] = terms
        draws[successes] = np.sqrt(terms.sum())
        successes += 1
    if successes < wanted:
        raise ReplicateFailureError(prices.label, attempts, successes, last_error)

    return EIEstimate(
        median=float(np.median(draws)),
        standard_error=float(np.std(draws, ddof=1)),
        draws=draws,
        contributions=contribution_shares(components),
        measures=original,
        n_obs=len(prices),
    )
