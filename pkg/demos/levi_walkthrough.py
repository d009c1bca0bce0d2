"""Conjugate a fixture by a random unimodular matrix and take it apart again.

Run: python demos/levi_walkthrough.py [fixture] [B] [seed]
"""

import random
import sys

from effective_levi.fixtures import conjugate_algebra, get_fixture, random_unimodular
from effective_levi.levi import effective_levi, standardize_radical
from effective_levi.lie import derived_length


def show(title, alg):
    print(f"{title} (dim {alg.dim}):")
    for x in alg.basis:
        print("   ", x)


def main(name="sl2_semidirect", B=50, seed=1):
    f = get_fixture(name)
    rng = random.Random(seed)
    gamma = random_unimodular(f.N, B, rng)
    g = conjugate_algebra(f.algebra(), gamma)
    print(f"{name}: {f.description}")
    print("gamma =", gamma)
    show("g", g)

    d = effective_levi(g)
    show("Levi factor h", d.h)
    show("radical r", d.r)
    print(f"T = ht(g) = {d.T}, ht(h) = {d.ht_h}, ht(r) = {d.ht_r}")
    print(f"recursion depth {d.depth}, derived length of r {derived_length(d.r) or 0}")
    print("valid:", d.is_valid())

    if f.nilpotent_radical:
        st = standardize_radical(g, d.h, d.r)
        print("delta =", st.delta)
        print("flag dimensions:", [len(level) for level in st.flag])


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0] if args else "sl2_semidirect",
         int(args[1]) if len(args) > 1 else 50,
         int(args[2]) if len(args) > 2 else 1)
