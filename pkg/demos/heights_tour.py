"""Siegel reduction, the height sandwich and S-adic heights on a few elements.

Run: python demos/heights_tour.py
"""

import random
from fractions import Fraction

from effective_levi.fixtures import random_sl_rational
from effective_levi.heights import (
    INF,
    SElement,
    ht_adjoint,
    ht_bounds_from_profile,
    ht_real,
    ht_S,
    ht_S_direct,
    injectivity_radius_lower,
    siegel_reduce,
)


def tour(g):
    red = siegel_reduce(g)
    b = ht_bounds_from_profile(red)
    ht = ht_real(g)
    print("g =", [[str(x) for x in row] for row in g])
    print("  gamma =", [list(r) for r in red.gamma])
    print("  a_i^2 =", [str(x) for x in red.profile.squared_lengths])
    print(f"  |a|^(1/(N-1)) = {b.lower:.4g} <~ ht = {float(ht.value):.4g} <~ |a| = {b.upper:.4g}"
          f"  (certified: {b.certifies(ht.value)})")
    print(f"  adjoint height {ht_adjoint(SElement([INF], [g])).value}")
    print(f"  injectivity radius >= {float(injectivity_radius_lower(g).eta):.3g}")


def main():
    tour([[4, 0], [0, Fraction(1, 4)]])
    tour([[4, 0, 0], [0, 1, 0], [0, 0, Fraction(1, 4)]])
    rng = random.Random(7)
    for n in (2, 3, 4):
        tour(random_sl_rational(n, rng, bound=200))

    # the same element seen at S = {inf, 2, 3}: both computations agree
    g = SElement([INF, 2, 3], [
        [[2, 0], [0, Fraction(1, 2)]],
        [[3, 1], [0, Fraction(1, 3)]],
        [[1, Fraction(1, 6)], [0, 1]],
    ])
    print("ht_S (clearing) =", ht_S(g).value, " ht_S (direct) =", ht_S_direct(g).value)


if __name__ == "__main__":
    main()
