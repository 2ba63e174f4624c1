#!/usr/bin/env python3
"""Compute the (p, q)-homology diamond and the (1,1) intersection pairing
for the bundled Klein bottle and torus cell complexes.

Usage:
    python scripts/homology_demo.py
"""

import json
from importlib import resources

from tropsurf import cosheaf_homology as ch


def load(name):
    with open(resources.files("tropsurf") / "data" / name) as fh:
        return json.load(fh)


def show_diamond(title, x):
    print(title)
    d = ch.diamond(x)
    for p in range(x.max_rank, -1, -1):
        print("  " + "  ".join(f"H({p},{q}) = {d[(p, q)]}" for q in range(x.max_dim + 1)))


def show_pairing(title, cycles):
    names = sorted(cycles)
    print(title)
    width = max(len(n) for n in names)
    print("  " + " " * (width + 2) + "  ".join(n.rjust(width) for n in names))
    for a in names:
        row = "  ".join(
            str(ch.intersection_pairing(cycles[a], cycles[b])).rjust(width)
            for b in names
        )
        print("  " + a.rjust(width) + "  " + row)
    print(f"  signature: {ch.signature_1_1([cycles[n] for n in names])}")


def main():
    for surface in ("klein_bottle", "torus"):
        x = ch.parse_complex(load(f"{surface}.json"))
        show_diamond(f"{surface.replace('_', ' ')}:", x)
        cycles_file = "klein_cycles.json" if surface == "klein_bottle" else "torus_cycles.json"
        cycles = {k: ch.parse_cycle(v) for k, v in load(cycles_file)["cycles"].items()}
        show_pairing("(1,1) pairing:", cycles)
        print()


if __name__ == "__main__":
    main()
