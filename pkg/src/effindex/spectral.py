"""Periodogram at the Fourier frequencies.

Shared input of both long-memory estimators.  The ordinate convention is

    I(lam_j) = |sum_t (x_t - xbar) * exp(-i t lam_j)|^2 / (2 pi n)

at lam_j = 2 pi j / n, so a white-noise series has a flat spectrum at
sigma^2 / (2 pi).  Both downstream estimators are invariant to the constant,
but fixing it keeps tests exact.  The mean is always removed first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SeriesTooShortError


@dataclass(frozen=True, eq=False)
class Periodogram:
    """Half-spectrum ordinates at j = 1 .. floor((n-1)/2).

    The zero frequency is excluded by construction (mean removal) and, for
    even n, the Nyquist ordinate is kept separately so the full-spectrum
    energy balance can still be audited.
    """

    freqs: np.ndarray
    power: np.ndarray
    n: int
    nyquist_power: float | None = None

    def __len__(self) -> int:
        return len(self.power)


def periodogram(x: np.ndarray) -> Periodogram:
    """Periodogram of a real series at the nonzero Fourier frequencies.

    Parameters
    ----------
    x : array
        Real-valued series, length >= 8.

    Returns
    -------
    Periodogram
        Ordinates for j = 1 .. floor((n-1)/2), radian frequencies 2 pi j / n.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if n < 8:
        raise SeriesTooShortError(f"periodogram needs length >= 8, got {n}")
    centered = x - x.mean()
    spec = np.fft.rfft(centered)
    ordinates = (spec.real**2 + spec.imag**2) / (2.0 * np.pi * n)
    half = (n - 1) // 2
    freqs = 2.0 * np.pi * np.arange(1, half + 1) / n
    nyq = float(ordinates[n // 2]) if n % 2 == 0 else None
    return Periodogram(freqs=freqs, power=ordinates[1 : half + 1], n=n, nyquist_power=nyq)
