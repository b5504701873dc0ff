#!/usr/bin/env python3
"""Build one equal-intensity waveform family and dump it for plotting.

Writes the family JSON plus a dense CSV of the shared intensity and all
member phases (the same layout the ``ddcap figure2`` subcommand emits), and
prints a small table of the zero configuration.
"""

import argparse

import numpy as np

from ddcap import enumerate_family, field_grid, random_signal, samples_to_spectrum
from ddcap.formats import write_family_json


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--M", type=int, default=4)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--points", type=int, default=512, help="grid points per period")
    ap.add_argument("--family-out", default="family.json")
    ap.add_argument("--csv-out", default="family_phases.csv")
    args = ap.parse_args()

    sig = random_signal(args.M, seed=args.seed)
    fam = enumerate_family(sig)
    zs = fam.zeroset

    print(f"M={args.M} seed={args.seed}: {len(fam)} members, "
          f"{int(zs.on_circle.sum())} on-circle zeros")
    print(f"{'zero':>24} {'|Z|':>10} {'class':>10}")
    for z, on, inside in zip(zs.zeros, zs.on_circle, zs.inside):
        label = "on_circle" if on else ("inside" if inside else "outside")
        print(f"{z:>24.6f} {abs(z):>10.6f} {label:>10}")

    write_family_json(args.family_out, fam)

    oversample = max(2, args.points // sig.M)
    times = np.arange(oversample * sig.M) / (oversample * sig.B)
    fields = [field_grid(samples_to_spectrum(s), oversample) for s in fam.signals]
    with open(args.csv_out, "w") as fh:
        names = ",".join(f"phase_{j}" for j in range(len(fields)))
        fh.write(f"t,intensity,{names}\n")
        intensity = np.abs(fields[0]) ** 2
        phases = [np.unwrap(np.angle(f)) for f in fields]
        for i, t in enumerate(times):
            row = [f"{t:.12g}", f"{intensity[i]:.12g}"] + [f"{p[i]:.12g}" for p in phases]
            fh.write(",".join(row) + "\n")
    print(f"wrote {args.family_out} and {args.csv_out}")


if __name__ == "__main__":
    main()
