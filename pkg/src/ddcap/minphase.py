"""Minimum-phase reconstruction of a waveform from its intensity alone.

For a band-limited periodic waveform with no zeros strictly inside the unit
circle, ``log E`` has a one-sided harmonic expansion, so the phase is pinned
to the log-magnitude by the circular Hilbert transform::

    phi(t) = -H[ log sqrt(I(t)) ] + c

(the sign follows from the ``E(t) = sum_k F_k e^{-i k Omega t}`` convention
used throughout; the free constant c is fixed by phase canonicalization).
``log sqrt(I)`` is not band-limited, so the transform runs on an oversampled
grid and the result is projected back onto the M in-band coefficients; the
projection residual is the reported reconstruction quality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signals import (
    PeriodicSignal,
    SampledIntensity,
    SpectralPoly,
    canonicalize_phase,
    field_grid,
    samples_to_spectrum,
    spectrum_to_samples,
)

#: Intensities are clamped below at this fraction of their maximum before the
#: log.  Exact zeros of I sit at on-circle polynomial zeros where the phase is
#: genuinely ambiguous; the clamp keeps the transform finite and the
#: ``regularized`` flag makes the degradation visible.
INTENSITY_FLOOR = 1e-12

#: Default relative tolerance on the reconstructed intensity.
DEFAULT_TOL = 1e-6

_MIN_GRID = 512
_MAX_GRID = 1 << 16


class IntensityNotRealizableError(ValueError):
    """The intensity is not that of any band-limited signal with M coefficients."""


@dataclass(frozen=True)
class LogMagnitudeSeries:
    """log sqrt(I) on a uniform grid over one period, with the clamp floor used."""

    grid_rate: float
    values: np.ndarray
    floor: float

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if not np.all(np.isfinite(vals)):
            raise ValueError("log-magnitude values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


def log_magnitude_series(intensity: SampledIntensity) -> LogMagnitudeSeries:
    """Clamped log sqrt(I) on the intensity's own grid."""
    vals = intensity.values
    floor = INTENSITY_FLOOR * float(vals.max())
    if floor == 0.0:
        raise ValueError("cannot take the log of an identically-zero intensity")
    return LogMagnitudeSeries(
        grid_rate=intensity.rate,
        values=0.5 * np.log(np.maximum(vals, floor)),
        floor=floor,
    )


def periodic_hilbert(series) -> np.ndarray:
    """Circular Hilbert transform, computed spectrally.

    The harmonic at index n is multiplied by -i sgn(n) (zero at DC and at the
    Nyquist bin), which maps cos to sin.  Applying the transform twice negates
    the input minus its DC and Nyquist components (both annihilated by the
    multiplier).  Accepts a :class:`LogMagnitudeSeries` or a plain real array
    of even length >= 4.
    """
    values = series.values if isinstance(series, LogMagnitudeSeries) else np.asarray(series, dtype=np.float64)
    n = len(values)
    if n < 4 or n % 2 != 0:
        raise ValueError("series length must be even and at least 4")
    spectrum = np.fft.rfft(values)
    spectrum[1:] *= -1j
    spectrum[0] = 0.0
    spectrum[-1] = 0.0  # Nyquist bin
    return np.fft.irfft(spectrum, n=n)


@dataclass(frozen=True)
class MinPhaseResult:
    """Reconstruction output plus the quality bookkeeping.

    ``residual`` is the worst relative intensity mismatch on the input grid;
    ``projection_residual`` is the out-of-band fraction of the raw
    sqrt(I) e^{i phi} waveform before projection; ``regularized`` marks inputs
    whose intensity had to be clamped away from zero.
    """

    signal: PeriodicSignal
    residual: float
    projection_residual: float
    regularized: bool
    grid_size: int
    tolerance: float


def _resample_to_grid(values: np.ndarray, n: int) -> np.ndarray:
    """Trigonometric interpolation of a real periodic grid onto n points."""
    if n == len(values):
        return values.copy()
    if n < len(values):
        raise ValueError("internal grid must not be coarser than the input")
    return np.fft.irfft(np.fft.rfft(values), n=n) * (n / len(values))


def min_phase_from_intensity(
    intensity: SampledIntensity,
    M: int,
    tol: float = DEFAULT_TOL,
    max_grid: int = _MAX_GRID,
) -> MinPhaseResult:
    """Reconstruct the minimum-phase waveform whose intensity is ``intensity``.

    Parameters
    ----------
    intensity : SampledIntensity
        One period of |E(t)|^2, sampled at rate >= 4B on a grid of q*M points
        (q >= 4 an integer).
    M : int
        Number of in-band Fourier coefficients of the sought waveform.
    tol : float
        Base relative tolerance on the reconstructed intensity.  The
        effective tolerance degrades as sqrt(max I / min clamped I), capped at
        1e-2, because accuracy provably degrades near deep nulls.

    Raises
    ------
    IntensityNotRealizableError
        If the out-of-band projection residual exceeds 100 * tol, i.e. no
        band-limited waveform with M coefficients has this intensity.
    """
    vals = intensity.values
    if len(vals) % M != 0 or len(vals) // M < 4:
        raise ValueError(
            f"intensity grid must hold q*M samples with q >= 4 (got {len(vals)} for M={M})"
        )
    max_i = float(vals.max())
    if max_i == 0.0:
        raise ValueError("cannot reconstruct from an identically-zero intensity")
    floor = INTENSITY_FLOOR * max_i
    regularized = bool(vals.min() < floor)
    tol_eff = min(tol * float(np.sqrt(max_i / max(vals.min(), floor))), 1e-2)

    n = max(8 * M, _MIN_GRID, len(vals))
    while True:
        dense = np.maximum(_resample_to_grid(vals, n), floor)
        log_mag = 0.5 * np.log(dense)
        phase = -periodic_hilbert(log_mag)
        raw = np.sqrt(dense) * np.exp(1j * phase)
        coeffs = np.fft.ifft(raw)
        total = float(np.linalg.norm(coeffs))
        leak = float(np.linalg.norm(coeffs[M:])) / total if total > 0 else 1.0
        if leak <= 0.1 * tol_eff or n >= max_grid:
            break
        n *= 2

    spec = SpectralPoly(coeffs=coeffs[:M], M=M, B=M * intensity.rate / len(vals))
    signal = canonicalize_phase(spectrum_to_samples(spec))

    oversample = len(vals) // M
    recon = np.abs(field_grid(samples_to_spectrum(signal), oversample)) ** 2
    residual = float(np.max(np.abs(recon - vals)) / max_i)

    if leak > 100.0 * tol and not regularized:
        raise IntensityNotRealizableError(
            f"intensity not realizable within bandwidth: out-of-band residual "
            f"{leak:.3e} exceeds {100.0 * tol:.3e}"
        )
    return MinPhaseResult(
        signal=signal,
        residual=residual,
        projection_residual=leak,
        regularized=regularized,
        grid_size=n,
        tolerance=tol_eff,
    )
