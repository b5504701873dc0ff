import numpy as np
import pytest

from ddcap import PeriodicSignal, spectrum_to_samples
from ddcap.signals import SpectralPoly


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def signal_from_coeffs(coeffs, B=1.0) -> PeriodicSignal:
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    return spectrum_to_samples(SpectralPoly(coeffs=coeffs, M=len(coeffs), B=B))


def random_coeff_signal(rng, M, B=1.0) -> PeriodicSignal:
    coeffs = (rng.standard_normal(M) + 1j * rng.standard_normal(M)) / np.sqrt(2 * M)
    return signal_from_coeffs(coeffs, B)
