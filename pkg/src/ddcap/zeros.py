"""Zero algebra of the field polynomial.

The field polynomial ``A(Z) = sum_k F_k Z^k`` satisfies ``E(t) = A(e^{-i Omega t})``,
so its modulus on the unit circle is the square root of the intensity.
Replacing a zero ``Z_k`` by its reflection ``1/conj(Z_k)`` (with a compensating
rescale of the leading coefficient) preserves that modulus and the polynomial
degree, hence produces a different band-limited waveform with the same
intensity.  Zeros sitting on the circle reflect onto themselves and create no
new waveform.  Enumerating all reflection patterns of the off-circle zeros
yields every band-limited waveform sharing the intensity, 2^N0 of them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .signals import (
    PeriodicSignal,
    SpectralPoly,
    canonicalize_phase,
    samples_to_spectrum,
    spectrum_to_samples,
)

#: A zero counts as on the unit circle when | |Z| - 1 | is below this.
#: Reflecting a zero closer than this to the circle changes the waveform by
#: less than the verification tolerances, so it is treated as degenerate.
UC_EPS = 1e-9

#: Off-circle zeros closer than this to each other flip jointly: reflecting
#: one of two numerically identical zeros yields members indistinguishable at
#: working precision.
ZERO_MERGE_TOL = 1e-7

#: Default bound on the number of independent flips (2^20 members).
DEFAULT_FLIP_CAP = 20

_ABERTH_MAX_ITER = 500
_POLISH_ITER = 3
_RESIDUAL_TOL = 1e-10


class RootConvergenceError(RuntimeError):
    """Root iteration did not reach the residual target within the budget."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (worst relative residual {residual:.3e})")
        self.residual = residual


class OnCircleFlipError(ValueError):
    """Reflection of an on-circle zero is a constant phase, not a new waveform."""


class EnumerationCapError(ValueError):
    """The family is larger than the enumeration cap allows."""


@dataclass(frozen=True)
class ZeroSet:
    """Classified zeros of the field polynomial.

    ``zeros`` has length eff_degree and ``leading`` is the coefficient of the
    highest retained power, so ``leading * prod(Z - zeros)`` reproduces the
    polynomial.  ``on_circle`` / ``inside`` are boolean masks (outside =
    neither); ``on_circle_times`` are the in-period times at which the field
    vanishes, one per on-circle zero.
    """

    zeros: np.ndarray
    leading: complex
    on_circle: np.ndarray
    inside: np.ndarray
    on_circle_times: np.ndarray
    M: int
    B: float

    @property
    def n_off_circle(self) -> int:
        return int(len(self.zeros) - self.on_circle.sum())

    @property
    def outside(self) -> np.ndarray:
        return ~(self.on_circle | self.inside)


def _horner(coeffs, z):
    acc = np.full_like(z, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def _aberth_ehrlich(coeffs: np.ndarray) -> np.ndarray:
    """Simultaneous root iteration for an ascending coefficient vector.

    Starting points sit on a circle of radius |c_0 / c_d|^(1/d) (clipped into
    the Cauchy bound) with a fixed angular offset and a small radial stagger to
    break symmetric configurations.  Corrections use the Ehrlich/Aberth
    third-order update; convergence is declared on the relative residual
    |A(z)| <= tol * max|c| * max(1, |z|)^d, after a few Newton polish steps.
    """
    d = len(coeffs) - 1
    deriv = coeffs[1:] * np.arange(1, d + 1)
    scale = np.max(np.abs(coeffs))
    cauchy = 1.0 + float(np.max(np.abs(coeffs[:-1] / coeffs[-1])))
    r0 = abs(coeffs[0] / coeffs[-1]) ** (1.0 / d) if coeffs[0] != 0 else 0.0
    r0 = min(max(r0, 1e-6 * cauchy), cauchy)
    k = np.arange(d)
    z = r0 * (1.0 + 0.02 * (k % 7) / 7.0) * np.exp(1j * (2 * np.pi * (k + 0.5) / d + 0.4))

    for _ in range(_ABERTH_MAX_ITER):
        p = _horner(coeffs, z)
        dp = _horner(deriv, z) if d > 1 else np.full_like(z, deriv[0])
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        pair_sum = (1.0 / diff).sum(axis=1)
        safe_dp = np.where(dp != 0, dp, 1.0)
        ratio = np.where(dp != 0, p / safe_dp, 0.0)
        denom = 1.0 - ratio * pair_sum
        step = np.where(denom != 0, ratio / np.where(denom != 0, denom, 1.0), ratio)
        z = z - step
        if np.max(np.abs(step) / (1.0 + np.abs(z))) < 1e-14:
            break

    for _ in range(_POLISH_ITER):
        p = _horner(coeffs, z)
        dp = _horner(deriv, z) if d > 1 else np.full_like(z, deriv[0])
        z = z - np.where(dp != 0, p / np.where(dp != 0, dp, 1.0), 0.0)

    residual = np.abs(_horner(coeffs, z)) / (scale * np.maximum(1.0, np.abs(z)) ** d)
    worst = float(residual.max())
    if worst > _RESIDUAL_TOL:
        raise RootConvergenceError("root iteration failed to converge", worst)
    return z


def find_zeros(spec: SpectralPoly) -> ZeroSet:
    """Locate and classify the eff_degree zeros of the field polynomial.

    Exact zeros of the low-order coefficients are factored out as roots at the
    origin before the simultaneous iteration runs on the remainder.  The
    returned zeros are sorted by angle then radius for reproducible output.
    """
    d = spec.eff_degree
    if d < 0:
        raise ValueError("cannot factor the identically-zero polynomial")
    coeffs = np.asarray(spec.coeffs[: d + 1])
    if d == 0:
        zeros = np.zeros(0, dtype=np.complex128)
    else:
        n_origin = 0
        while n_origin < d and coeffs[n_origin] == 0:
            n_origin += 1
        trimmed = coeffs[n_origin:]
        if len(trimmed) > 1:
            found = _aberth_ehrlich(trimmed)
        else:
            found = np.zeros(0, dtype=np.complex128)
        zeros = np.concatenate([np.zeros(n_origin, dtype=np.complex128), found])
        order = np.lexsort((np.abs(zeros), np.angle(zeros)))
        zeros = zeros[order]

    on_circle = np.abs(np.abs(zeros) - 1.0) <= UC_EPS
    inside = (~on_circle) & (np.abs(zeros) < 1.0)
    # E(t) = A(e^{-i Omega t}) vanishes where e^{-i Omega t} hits an on-circle
    # zero, i.e. t = (-arg Z mod 2 pi) / Omega.
    times = np.mod(-np.angle(zeros[on_circle]), 2.0 * np.pi) / spec.omega
    return ZeroSet(
        zeros=zeros,
        leading=complex(coeffs[-1]),
        on_circle=on_circle,
        inside=inside,
        on_circle_times=times,
        M=spec.M,
        B=spec.B,
    )


def poly_from_zeroset(zeros, leading, M: int, B: float) -> SpectralPoly:
    """Rebuild the length-M coefficient vector from zeros and leading coefficient."""
    coeffs = npoly.polyfromroots(np.asarray(zeros, dtype=np.complex128)) * leading
    if len(coeffs) > M:
        raise ValueError(f"degree {len(coeffs) - 1} does not fit in M={M} coefficients")
    full = np.zeros(M, dtype=np.complex128)
    full[: len(coeffs)] = coeffs
    return SpectralPoly(coeffs=full, M=M, B=B)


def signal_from_zeros(zeros, M: int, B: float = 1.0, leading=1.0) -> PeriodicSignal:
    """Construct the waveform whose field polynomial has the given zeros."""
    return spectrum_to_samples(poly_from_zeroset(zeros, leading, M, B))


def flip_zeros(spec: SpectralPoly, mask: int, zeroset: ZeroSet | None = None) -> SpectralPoly:
    """Reflect the masked zeros across the unit circle.

    Bit i of ``mask`` addresses ``zeroset.zeros[i]``.  Each masked zero Z is
    replaced by ``1/conj(Z)`` and the leading coefficient is rescaled by |Z|,
    which preserves the modulus of the polynomial on the unit circle exactly
    in exact arithmetic and makes the flip an exact involution.  (Any other
    modulus-|Z| rescale differs only by a constant phase, which the phase
    canonicalization quotients out anyway.)

    Masking an on-circle zero raises :class:`OnCircleFlipError`: its
    reflection is the zero itself, so the "flip" is a constant phase factor
    and produces no new waveform.
    """
    zs = zeroset if zeroset is not None else find_zeros(spec)
    n = len(zs.zeros)
    if mask < 0 or mask >= (1 << n):
        raise ValueError(f"mask {mask} out of range for {n} zeros")
    flip = np.array([(mask >> i) & 1 == 1 for i in range(n)], dtype=bool)
    if np.any(flip & zs.on_circle):
        raise OnCircleFlipError(
            "mask addresses an on-circle zero; its reflection is a constant "
            "phase and does not produce a new waveform"
        )
    if np.any(flip & (np.abs(zs.zeros) < 1e-12)):
        raise ValueError("cannot reflect a zero at the origin within the band")
    new_zeros = np.where(flip, 1.0 / np.conj(zs.zeros), zs.zeros)
    scale = float(np.prod(np.abs(zs.zeros[flip]))) if flip.any() else 1.0
    return poly_from_zeroset(new_zeros, zs.leading * scale, spec.M, spec.B)


def _flip_groups(zs: ZeroSet) -> list[int]:
    """Independent flip bits: off-circle zeros, with near-coincident ones merged.

    Returns one zero-index bitmask per group, ordered by lowest zero index.
    """
    idx = [i for i in range(len(zs.zeros)) if not zs.on_circle[i]]
    parent = {i: i for i in idx}

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in idx:
        for b in idx:
            if a < b and abs(zs.zeros[a] - zs.zeros[b]) <= ZERO_MERGE_TOL:
                parent[root(b)] = root(a)

    groups: dict[int, int] = {}
    for i in idx:
        r = root(i)
        groups[r] = groups.get(r, 0) | (1 << i)
    return [groups[r] for r in sorted(groups)]


@dataclass(frozen=True)
class EqualIntensityFamily:
    """All distinguishable band-limited waveforms sharing one intensity.

    ``members`` holds ``(mask, signal)`` pairs in binary counting order of the
    flip pattern; ``mask`` is a bitset over the zeros of ``zeroset`` (bits of
    jointly-flipped groups appear together).  Every member is phase-canonical.
    """

    base: PeriodicSignal
    zeroset: ZeroSet
    members: tuple

    def __len__(self):
        return len(self.members)

    @property
    def signals(self) -> list[PeriodicSignal]:
        return [s for _, s in self.members]


def enumerate_family(sig: PeriodicSignal, max_flips: int = DEFAULT_FLIP_CAP) -> EqualIntensityFamily:
    """Enumerate the 2^N0 waveforms sharing the intensity of ``sig``.

    N0 is the number of off-circle zeros (merged near-duplicates count once).
    Raises :class:`EnumerationCapError` when N0 exceeds ``max_flips``; the cap
    exists because the member count is exponential, and can be raised
    explicitly by the caller.
    """
    spec = samples_to_spectrum(sig)
    zs = find_zeros(spec)
    groups = _flip_groups(zs)
    if len(groups) > max_flips:
        raise EnumerationCapError(
            f"family has 2^{len(groups)} members, above the cap 2^{max_flips}; "
            f"pass max_flips={len(groups)} to enumerate anyway"
        )
    members = []
    for pattern in range(1 << len(groups)):
        mask = 0
        for bit, group in enumerate(groups):
            if (pattern >> bit) & 1:
                mask |= group
        flipped = flip_zeros(spec, mask, zeroset=zs)
        member = canonicalize_phase(spectrum_to_samples(flipped))
        members.append((mask, member))
    return EqualIntensityFamily(base=sig, zeroset=zs, members=tuple(members))


def min_phase_member(sig: PeriodicSignal) -> PeriodicSignal:
    """The family member with no zeros strictly inside the unit circle.

    Obtained by reflecting exactly the inside zeros to the outside; the result
    is phase-canonical.
    """
    spec = samples_to_spectrum(sig)
    zs = find_zeros(spec)
    mask = 0
    for i in range(len(zs.zeros)):
        if zs.inside[i]:
            mask |= 1 << i
    flipped = flip_zeros(spec, mask, zeroset=zs)
    return canonicalize_phase(spectrum_to_samples(flipped))


def embed_finite_support(payload, M_prime: int, B: float = 1.0) -> PeriodicSignal:
    """Embed a length-M payload into a period of M'/B with zero guard samples.

    The payload occupies a centred block; all other rate-B samples are zero.
    M' must be at least 4M so the interpolation tails decay across the guard
    band.  The zero samples force at least M' - M zeros of the field
    polynomial onto the unit circle, so the equal-intensity family of the
    embedded waveform has at most 2^(M-1) members regardless of M'.
    """
    payload = np.asarray(payload, dtype=np.complex128)
    if payload.ndim != 1 or len(payload) == 0:
        raise ValueError("payload must be a non-empty 1-d sequence")
    M = len(payload)
    if M_prime < 4 * M:
        raise ValueError(f"M_prime must be >= 4*M = {4 * M}, got {M_prime}")
    samples = np.zeros(M_prime, dtype=np.complex128)
    offset = (M_prime - M) // 2
    samples[offset : offset + M] = payload
    return PeriodicSignal(M=M_prime, B=B, samples=samples)
