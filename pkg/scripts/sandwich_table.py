#!/usr/bin/env python3
"""Exact chain-rule sandwich on small noiseless waveform channels.

For each constellation^M alphabet the table lists the coherent and
direct-detection mutual informations per degree of freedom and the gap,
which must sit in [0, (M-1)/M]; the last row is an equal-intensity family,
which saturates the gap exactly.
"""

import itertools

import numpy as np

from ddcap import PeriodicSignal, chain_bound_check, enumerate_family, psk, random_signal

CASES = [
    ("bpsk", np.array([1.0, -1.0]), 1),
    ("bpsk", np.array([1.0, -1.0]), 2),
    ("bpsk", np.array([1.0, -1.0]), 3),
    ("qpsk", psk(4), 1),
    ("qpsk", psk(4), 2),
    ("8psk", psk(8), 1),
]


def waveforms(points, M):
    return [PeriodicSignal(M=M, B=1.0, samples=np.array(t))
            for t in itertools.product(points, repeat=M)]


def main():
    print(f"{'alphabet':>12} {'M':>3} {'I(X;Y_coh)':>12} {'I(X;Y_dd)':>12} {'gap':>8} {'bound':>8}")
    for name, points, M in CASES:
        rep = chain_bound_check(waveforms(points, M))
        print(f"{name + '^' + str(M):>12} {M:>3} {rep.mi_coherent:>12.6f} "
              f"{rep.mi_direct:>12.6f} {rep.gap:>8.4f} {rep.bound:>8.4f}")
    fam = enumerate_family(random_signal(4, seed=7))
    rep = chain_bound_check(fam.signals)
    print(f"{'family(M=4)':>12} {4:>3} {rep.mi_coherent:>12.6f} "
          f"{rep.mi_direct:>12.6f} {rep.gap:>8.4f} {rep.bound:>8.4f}")


if __name__ == "__main__":
    main()
