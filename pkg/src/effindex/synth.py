"""Synthetic generators used as statistical oracles for the estimators.

``gen_fgn`` draws exact-covariance fractional Gaussian noise by circulant
embedding: the autocovariance

    gamma(k) = (sigma^2 / 2) (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H})

is embedded in a circulant of size 2n (doubled once to 4n if an eigenvalue
dips below -1e-9), diagonalized by the FFT, and synthesized with
Hermitian-symmetric complex Gaussian weights.  ``gen_iid_gaussian`` and
``gen_logistic_map`` provide the uncorrelated and the deterministic
fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmbeddingFailureError, GenerationError
from .series import SeedSpec

_EIG_TOL = -1e-9


@dataclass(frozen=True)
class FgnSpec:
    h: float
    n: int
    sigma: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.h < 1.0:
            raise ValueError("h must lie in (0, 1)")
        if self.n < 8:
            raise ValueError("n must be >= 8")
        if self.sigma <= 0.0:
            raise ValueError("sigma must be positive")


def fgn_autocovariance(h: float, lags: np.ndarray, sigma: float = 1.0) -> np.ndarray:
    """Autocovariance gamma(k) of fractional Gaussian noise."""
    k = np.abs(np.asarray(lags, dtype=np.float64))
    two_h = 2.0 * h
    return 0.5 * sigma**2 * ((k + 1.0) ** two_h - 2.0 * k**two_h + np.abs(k - 1.0) ** two_h)


def embedding_eigenvalues(h: float, n: int) -> np.ndarray:
    """Eigenvalues of the size-2n circulant embedding (unit sigma)."""
    gamma = fgn_autocovariance(h, np.arange(n))
    row = np.concatenate([gamma, [0.0], gamma[:0:-1]])
    return np.fft.fft(row).real


def _coerce_seed(seed) -> SeedSpec:
    return seed if isinstance(seed, SeedSpec) else SeedSpec(int(seed))


def gen_fgn(spec: FgnSpec, seed, replicate: int = 0) -> np.ndarray:
    """Fractional Gaussian noise sample with exact target covariance."""
    rng = _coerce_seed(seed).rng(replicate)
    for length in (spec.n, 2 * spec.n):
        eig = embedding_eigenvalues(spec.h, length)
        if eig.min() >= _EIG_TOL:
            eig = np.maximum(eig, 0.0)
            break
    else:
        raise EmbeddingFailureError(
            f"negative embedding eigenvalue for h={spec.h}, n={spec.n} even after doubling"
        )
    m = eig.size  # 2 * length
    half = m // 2
    weights = np.empty(m, dtype=np.complex128)
    weights[0] = rng.standard_normal()
    weights[half] = rng.standard_normal()
    re = rng.standard_normal(half - 1)
    im = rng.standard_normal(half - 1)
    weights[1:half] = (re + 1j * im) / np.sqrt(2.0)
    weights[half + 1 :] = np.conj(weights[1:half][::-1])
    path = np.fft.ifft(np.sqrt(eig) * weights)
    return spec.sigma * np.sqrt(m) * path.real[: spec.n]


def gen_iid_gaussian(n: int, sigma: float = 1.0, seed=0, replicate: int = 0) -> np.ndarray:
    """Mean-zero iid Gaussian series."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sigma * _coerce_seed(seed).rng(replicate).standard_normal(n)


def gen_logistic_map(
    n: int, growth: float = 4.0, burn_in: int = 1000, seed=0, replicate: int = 0
) -> np.ndarray:
    """Deterministic chaotic series x[t+1] = growth x[t] (1 - x[t]).

    The starting point is drawn uniformly from (0.05, 0.95) so it almost
    surely avoids low-order periodic orbits; burn-in discards the transient.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if burn_in < 1000:
        raise ValueError("burn_in must be >= 1000")
    rng = _coerce_seed(seed).rng(replicate)
    x = 0.05 + 0.9 * rng.random()
    out = np.empty(n)
    for t in range(burn_in + n):
        x = growth * x * (1.0 - x)
        if not 0.0 <= x <= 1.0:
            raise GenerationError(f"logistic map left [0, 1] at step {t}")
        if t >= burn_in:
            out[t - burn_in] = x
    return out
