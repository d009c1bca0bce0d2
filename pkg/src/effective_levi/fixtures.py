"""Hand-checked test algebras and random generators.

Each fixture records the expected dimensions of the radical and of a Levi
factor. The JSON files under ``fixtures/`` are produced from these definitions
by :func:`write_fixture_files`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .lie import LieSubalgebra, elementary
from .matrix import det, identity, inverse, mat_mul


def _e(n, i, j):
    return elementary(n, i - 1, j - 1)


def _h(n, i, j):
    x = [[0] * n for _ in range(n)]
    x[i - 1][i - 1] = 1
    x[j - 1][j - 1] = -1
    return x


def _diag(*d):
    n = len(d)
    return [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    N: int
    basis: tuple
    dim_h: int
    dim_r: int
    derived_length_r: int
    l_basis: Optional[tuple] = None
    nilpotent_radical: bool = True

    def algebra(self) -> LieSubalgebra:
        return LieSubalgebra(self.N, [list(map(list, b)) for b in self.basis])

    def l_algebra(self) -> Optional[LieSubalgebra]:
        if self.l_basis is None:
            return None
        return LieSubalgebra(self.N, [list(map(list, b)) for b in self.l_basis])


def _t(mats):
    return tuple(tuple(tuple(r) for r in m) for m in mats)


def _sl2_block(n, i, j):
    return [_e(n, i, j), _e(n, j, i), _h(n, i, j)]


FIXTURES: Dict[str, Fixture] = {}


def _add(f: Fixture):
    FIXTURES[f.name] = f


_add(Fixture("sl2_block_sl3", "sl_2 in the upper left corner of sl_3", 3,
             _t(_sl2_block(3, 1, 2)), 3, 0, 0))
_add(Fixture("sl2_block_sl4", "sl_2 in the upper left corner of sl_4", 4,
             _t(_sl2_block(4, 1, 2)), 3, 0, 0))
_add(Fixture("sl3", "all of sl_3", 3,
             _t([_e(3, i, j) for i in range(1, 4) for j in range(1, 4) if i != j]
                + [_h(3, 1, 2), _h(3, 2, 3)]), 8, 0, 0))
_add(Fixture("sl2_semidirect", "{[[A, v], [0, 0]]}: sl_2 acting on its standard representation", 3,
             _t(_sl2_block(3, 1, 2) + [_e(3, 1, 3), _e(3, 2, 3)]), 3, 2, 1))
_add(Fixture("sl2_semidirect_torus", "sl_2 semidirect Q^2 with the torus Q diag(1,-1,0) prescribed", 3,
             _t(_sl2_block(3, 1, 2) + [_e(3, 1, 3), _e(3, 2, 3)]), 3, 2, 1,
             l_basis=_t([_h(3, 1, 2)])))
_add(Fixture("sl2_heisenberg", "sl_2 on rows 2-3 of sl_4 acting on a Heisenberg radical", 4,
             _t(_sl2_block(4, 2, 3) + [_e(4, 1, 2), _e(4, 1, 3), _e(4, 2, 4), _e(4, 3, 4), _e(4, 1, 4)]),
             3, 5, 2))
_add(Fixture("heisenberg_sl3", "Heisenberg algebra span(E12, E13, E23) = nilradical of the Borel of sl_3", 3,
             _t([_e(3, 1, 2), _e(3, 1, 3), _e(3, 2, 3)]), 0, 3, 2))
_add(Fixture("nilradical_sl4", "strictly upper triangular matrices in sl_4", 4,
             _t([_e(4, i, j) for i in range(1, 5) for j in range(i + 1, 5)]), 0, 6, 2))
_add(Fixture("borel_sl2", "span(E12, h) in sl_2", 2,
             _t([_e(2, 1, 2), _h(2, 1, 2)]), 0, 2, 2, nilpotent_radical=False))
_add(Fixture("borel_sl3", "upper triangular traceless matrices in sl_3", 3,
             _t([_e(3, 1, 2), _e(3, 1, 3), _e(3, 2, 3), _h(3, 1, 2), _h(3, 2, 3)]), 0, 5, 3,
             nilpotent_radical=False))
_add(Fixture("sl2_plus_line_sl4", "direct sum sl_2 + Q E34 in sl_4", 4,
             _t(_sl2_block(4, 1, 2) + [_e(4, 3, 4)]), 3, 1, 1))
_add(Fixture("gl2_sl3", "direct sum sl_2 + Q diag(1,1,-2) in sl_3", 3,
             _t(_sl2_block(3, 1, 2) + [_diag(1, 1, -2)]), 3, 1, 1, nilpotent_radical=False))


def fixture_names() -> List[str]:
    return list(FIXTURES)


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


# --------------------------------------------------------------------------
# Random generators


def random_unimodular(n: int, bound: int, rng: random.Random, steps: Optional[int] = None):
    """Random element of SL_N(Z) with entries bounded by ``bound`` in absolute value.

    Built from elementary row and column operations with random multipliers;
    an operation is rejected when it would push an entry past the bound.
    """
    g = identity(n)
    if n == 1 or bound < 1:
        return g
    steps = steps if steps is not None else 4 * n * n
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        t = rng.randint(-bound, bound)
        if t == 0:
            continue
        if rng.random() < 0.5:
            new_row = [a + t * b for a, b in zip(g[i], g[j])]
            if max(abs(x) for x in new_row) <= bound:
                g[i] = new_row
        else:
            new_col = [row[i] + t * row[j] for row in g]
            if max(abs(x) for x in new_col) <= bound:
                for row, x in zip(g, new_col):
                    row[i] = x
    return g


def conjugate(gamma, x):
    return mat_mul(mat_mul(gamma, x), inverse(gamma))


def conjugate_algebra(g: LieSubalgebra, gamma) -> LieSubalgebra:
    """``gamma g gamma^{-1}``; an SL_N(Z) conjugate of a saturated basis stays saturated."""
    return LieSubalgebra(g.N, [conjugate(gamma, x) for x in g.basis])


def _small_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_sl_rational(n: int, rng: random.Random, bound: int = 1000, factor_bound: int = 12):
    """Random g in SL_N(Q) whose numerators and denominators are at most ``bound``.

    ``g = L D U`` with unipotent triangular L, U and a determinant-one diagonal D
    of small rationals, resampled until the entry condition holds.
    """
    while True:
        low = identity(n)
        up = identity(n)
        for i in range(n):
            for j in range(n):
                if i > j:
                    low[i][j] = _small_rational(rng, factor_bound)
                elif i < j:
                    up[i][j] = _small_rational(rng, factor_bound)
        diag = []
        for _ in range(n - 1):
            diag.append(Fraction(rng.randint(1, factor_bound), rng.randint(1, factor_bound)) * rng.choice((1, -1)))
        prod = Fraction(1)
        for d in diag:
            prod *= d
        diag.append(1 / prod)
        d = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
        g = mat_mul(mat_mul(low, d), up)
        if all(abs(Fraction(x).numerator) <= bound and Fraction(x).denominator <= bound for row in g for x in row):
            assert det(g) == 1
            return g


def random_subalgebra(n: int, rng: random.Random, max_dim: int = 5, gens: int = 2, entry: int = 2):
    """Subalgebra generated by a few random sparse integer traceless matrices.

    Generators are resampled until the generated algebra has dimension at most
    ``max_dim``.
    """
    from .lie import bracket, from_coords, to_coords
    from .linalg import saturate

    while True:
        mats = []
        for _ in range(gens):
            x = [[0] * n for _ in range(n)]
            for _ in range(rng.randint(1, 3)):
                i, j = rng.randrange(n), rng.randrange(n)
                x[i][j] += rng.randint(-entry, entry)
            x[n - 1][n - 1] -= sum(x[i][i] for i in range(n))
            if any(any(r) for r in x):
                mats.append(to_coords(x))
        if not mats:
            continue
        vecs = saturate(mats)
        while len(vecs) <= max_dim:
            ms = [from_coords(v, n) for v in vecs]
            new = [to_coords(bracket(a, b)) for i, a in enumerate(ms) for b in ms[i + 1:]]
            bigger = saturate(vecs + [v for v in new if any(v)])
            if len(bigger) == len(vecs):
                return LieSubalgebra(n, vecs)
            vecs = bigger


def write_fixture_files(directory) -> List[str]:
    """Write one JSON file per fixture; returns the file names written."""
    import os

    from .serialize import dump, fixture_to_json

    os.makedirs(directory, exist_ok=True)
    names = []
    for f in FIXTURES.values():
        path = os.path.join(directory, f.name + ".json")
        with open(path, "w") as fh:
            fh.write(dump(fixture_to_json(f)))
        names.append(path)
    return names
