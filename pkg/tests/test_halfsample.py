"""Half-sample intensity oracle: sinc double sum against independent routes."""

import numpy as np
import pytest

from ddcap import evaluate_field, half_sample_intensity_oracle
from ddcap.signals import SpectralPoly, spectrum_to_samples


def sinc_series_field(samples, t):
    """Brute-force band-[0,B] interpolation of a finite-support sequence (B=1)."""
    j = np.arange(len(samples))
    x = t - j
    return np.sum(np.asarray(samples) * np.exp(-1j * np.pi * x) * np.sinc(x))


def literal_double_sum(samples, n):
    """Eq-style double sum over all index pairs, sign factor written out."""
    s = np.asarray(samples, dtype=complex)
    total = 0.0
    for m in range(len(s)):
        for k in range(len(s)):
            total += (
                (-1.0) ** (k - m)
                * np.sinc(n - m + 0.5)
                * np.sinc(n - k + 0.5)
                * np.conj(s[m])
                * s[k]
            )
    return float(np.real(total))


def test_single_sample_analytic_value():
    # one term: sinc(pi/2)^2 = (2/pi)^2 = 4/pi^2
    value = half_sample_intensity_oracle([1.0], n=0, window=10)
    assert value == pytest.approx(4.0 / np.pi**2, abs=1e-12)


def test_all_zero_sequence():
    assert half_sample_intensity_oracle([0.0, 0.0, 0.0], n=1, window=5) == 0.0


def test_two_sample_case_matches_sinc_series():
    samples = [1.0, 1.0j]
    value = half_sample_intensity_oracle(samples, n=0, window=10_000)
    direct = abs(sinc_series_field(samples, 0.5)) ** 2
    assert value == pytest.approx(direct, abs=1e-3)
    assert value == pytest.approx(direct, rel=1e-12)  # exact at matching truncation


def test_matches_literal_double_sum(rng):
    samples = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    for n in (-1, 0, 2, 4, 6):
        value = half_sample_intensity_oracle(samples, n=n, window=64)
        assert value == pytest.approx(literal_double_sum(samples, n), rel=1e-12, abs=1e-15)


def test_window_must_be_positive():
    with pytest.raises(ValueError, match="window"):
        half_sample_intensity_oracle([1.0, 2.0, 3.0], n=0, window=0)


def test_truncated_periodic_copy_converges_to_field_evaluation(rng):
    # DC-free signal: no content at the critically-sampled band edge, so the
    # interpolation series converges unconditionally to the periodic field
    M = 6
    coeffs = rng.standard_normal(M) + 1j * rng.standard_normal(M)
    coeffs[0] = 0.0
    spec = SpectralPoly(coeffs=coeffs, M=M, B=1.0)
    sig = spectrum_to_samples(spec)
    n0 = 2
    truth = abs(evaluate_field(spec, n0 + 0.5)) ** 2

    errors = []
    for window in (100, 1_000, 10_000):
        total = 2 * window + M
        copy = np.tile(sig.samples, total // M + 1)[:total]
        center = (total // (2 * M)) * M + n0
        value = half_sample_intensity_oracle(copy, n=center, window=window)
        errors.append(abs(value - truth) / truth)
    # O(1/window) with a modest constant, and strictly improving
    for window, err in zip((100, 1_000, 10_000), errors):
        assert err < 20.0 / window
    assert errors[2] < errors[1] < errors[0]
