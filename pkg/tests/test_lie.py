"""Lie-algebra arithmetic checked against sympy computations done from scratch."""

import random
from fractions import Fraction

import numpy
import pytest
import sympy
from hypothesis import given, strategies as st

from effective_levi.errors import NotInAlgebraError
from effective_levi.fixtures import FIXTURES, random_subalgebra
from effective_levi.lie import (
    LieSubalgebra,
    bracket,
    charpoly,
    derived_algebra,
    derived_length,
    eigenvalue_product,
    elementary,
    height,
    height_subspace,
    ideal_generated,
    is_ideal,
    is_solvable,
    killing_form,
    normalizer_in_slN,
    quotient_killing_nondegenerate,
    radical,
    sl_basis,
    to_coords,
)
from effective_levi.matrix import mat_pow, is_zero


def E(n, i, j):
    return elementary(n, i - 1, j - 1)


def H(n, i, j):
    x = [[0] * n for _ in range(n)]
    x[i - 1][i - 1], x[j - 1][j - 1] = 1, -1
    return x


def sl2():
    return LieSubalgebra(2, [E(2, 1, 2), E(2, 2, 1), H(2, 1, 2)])


# --- sympy oracle ------------------------------------------------------------


def sympy_killing(mats):
    """Killing form from scratch: coordinates by solving the linear system in sympy."""
    m = len(mats)
    cols = sympy.Matrix([[sympy.Integer(x) for row in a for x in row] for a in mats]).T

    def coords(x):
        vec = sympy.Matrix([x for row in x.tolist() for x in row])
        sol = cols.solve_least_squares(vec) if cols.shape[0] > m else cols.solve(vec)
        assert cols * sol == vec
        return sol

    smats = [sympy.Matrix(a) for a in mats]
    ad = []
    for x in smats:
        ad.append(sympy.Matrix.hstack(*[coords(x * y - y * x) for y in smats]))
    return [[int((ad[i] * ad[j]).trace()) for j in range(m)] for i in range(m)]


# --- bracket and Killing form ------------------------------------------------


def test_bracket_examples():
    e, f = E(2, 1, 2), E(2, 2, 1)
    assert bracket(e, f) == [[1, 0], [0, -1]]
    assert bracket(e, e) == [[0, 0], [0, 0]]
    assert bracket([[1, 0], [0, -1]], [[2, 0], [0, -2]]) == [[0, 0], [0, 0]]


def test_killing_sl2():
    k = killing_form(sl2())
    assert k[2][2] == 8 and k[0][1] == 4 and k[0][0] == 0
    assert k == sympy_killing(sl2().basis)


def test_killing_abelian_and_central():
    g = LieSubalgebra(3, [H(3, 1, 2), H(3, 2, 3)])
    assert killing_form(g) == [[0, 0], [0, 0]]
    heis = LieSubalgebra(3, [E(3, 1, 2), E(3, 2, 3), E(3, 1, 3)])
    k = killing_form(heis)
    z = [i for i, x in enumerate(heis.basis) if x == E(3, 1, 3) or x == [[-v for v in r] for r in E(3, 1, 3)]]
    assert all(v == 0 for v in k[z[0]])


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_killing_matches_oracle_on_fixtures(name):
    g = FIXTURES[name].algebra()
    assert killing_form(g) == sympy_killing(g.basis)


def test_closure_is_checked():
    with pytest.raises(NotInAlgebraError):
        LieSubalgebra(2, [E(2, 1, 2), E(2, 2, 1)])


def test_structure_constants_are_bounded_by_bracket_norms():
    for f in FIXTURES.values():
        g = f.algebra()
        a = g.structure_constants
        mats = g.basis
        for i in range(g.dim):
            for j in range(g.dim):
                # coordinates in a saturated basis of an integral vector are integral
                assert all(isinstance(x, int) for x in a[i][j])
                br = to_coords(bracket(mats[i], mats[j]))
                assert g.vector_from_gcoords(a[i][j]) == br


# --- radical -----------------------------------------------------------------


def semidirect():
    return LieSubalgebra(3, [E(3, 1, 2), E(3, 2, 1), H(3, 1, 2), E(3, 1, 3), E(3, 2, 3)])


def test_radical_examples():
    assert radical(sl2()).dim == 0
    ab = LieSubalgebra(3, [H(3, 1, 2), H(3, 2, 3)])
    assert radical(ab).same_space(ab)
    r = radical(semidirect())
    assert r.same_space(LieSubalgebra(3, [E(3, 1, 3), E(3, 2, 3)]))


def assert_radical_oracle(g):
    r = radical(g)
    assert is_ideal(r, g) and g.contains_algebra(r)
    assert is_solvable(r)
    assert quotient_killing_nondegenerate(g, r)
    # independent Killing-orthogonality check with sympy
    k = sympy.Matrix(sympy_killing(g.basis)) if g.dim else None
    if g.dim:
        d = derived_algebra(g)
        dco = sympy.Matrix([g.coordinates_of(v) for v in d.basis]) if d.dim else sympy.zeros(0, g.dim)
        ns = (dco * k).nullspace() if d.dim else [sympy.eye(g.dim)[:, i] for i in range(g.dim)]
        assert len(ns) == r.dim
    # maximality: no basis direction outside r extends it to a solvable ideal
    for x in g.basis:
        if r.contains(x):
            continue
        bigger = ideal_generated(g, [to_coords(y) for y in r.basis] + [to_coords(x)])
        assert not is_solvable(bigger)
    return r


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_radical_on_fixtures(name):
    f = FIXTURES[name]
    r = assert_radical_oracle(f.algebra())
    assert r.dim == f.dim_r
    assert (derived_length(r) or 0) == f.derived_length_r


@given(st.integers(0, 10**6))
def test_radical_on_random_subalgebras(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3, 4])
    assert_radical_oracle(random_subalgebra(n, rng, max_dim=5))


# --- derived series ----------------------------------------------------------


def test_derived_length_examples():
    assert derived_length(LieSubalgebra(3, [H(3, 1, 2), H(3, 2, 3)])) == 1
    assert derived_length(LieSubalgebra(3, [E(3, 1, 2), E(3, 1, 3), E(3, 2, 3)])) == 2
    assert derived_length(sl2()) is None
    assert derived_length(LieSubalgebra.zero(3)) == 0


# --- heights -------------------------------------------------------------------


def test_height_examples():
    assert height_subspace([E(2, 1, 2)]).value == 1
    x = [[0, 1], [2, 0]]
    assert height_subspace([x]).value == 2
    assert height_subspace(sl2().basis).value == 1
    assert height(sl2()) == 1
    assert height(LieSubalgebra.zero(3)) == 1


def sympy_height(coords):
    m = sympy.Matrix(coords)
    d = m.rows
    from itertools import combinations

    minors = [m.extract(list(range(d)), list(c)).det() for c in combinations(range(m.cols), d)]
    # divide by content after saturating: height of the primitive wedge
    g = 0
    for x in minors:
        g = sympy.gcd(g, x)
    return int(max(abs(x) for x in minors) / g)


@given(st.integers(2, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n * n - 1, max_size=n * n - 1),
                       min_size=1, max_size=3)))
def test_height_against_minors_and_basis_change(rows):
    from effective_levi.matrix import rank

    if rank(rows) != len(rows):
        return
    n = {3: 2, 8: 3}[len(rows[0])]
    h = height_subspace([list(r) for r in rows], n)
    assert h.value == sympy_height(rows)
    # rational change of basis does not change the height
    mixed = [[Fraction(x, 3) + (Fraction(y, 2) if k == 0 and len(rows) > 1 else 0) for x, y in zip(r, rows[-1])]
             for k, r in enumerate(rows)]
    assert height_subspace(mixed, n).value == h.value


# --- normalizer ----------------------------------------------------------------


def test_normalizer_examples():
    assert normalizer_in_slN(sl_basis(3)).dim == 8
    assert normalizer_in_slN([], 3).dim == 8
    b = normalizer_in_slN([E(2, 1, 2)])
    assert b.same_space(LieSubalgebra(2, [E(2, 1, 2), H(2, 1, 2)]))


def test_levi_factor_normalizes_radical():
    g = semidirect()
    r = radical(g)
    nr = normalizer_in_slN(r.basis)
    assert nr.contains_algebra(g)


# --- eigenvalue product ------------------------------------------------------------


def test_eigenvalue_product_examples():
    assert eigenvalue_product(E(2, 1, 2)) == 0
    assert eigenvalue_product([[1, 0], [0, -1]]) == -1
    assert eigenvalue_product([[2, 0, 0], [0, -1, 0], [0, 0, -1]]) == 2


@given(st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_and_dichotomy(w):
    n = len(w)
    t = sympy.Symbol("t")
    ref = sympy.Matrix(w).charpoly(t).all_coeffs()
    assert [Fraction(int(c)) for c in reversed(ref)] == [Fraction(c) for c in charpoly(w)]
    s = eigenvalue_product(w)
    assert (s == 0) == is_zero(mat_pow(w, n))
    if s != 0:
        assert abs(s) >= 1
    # product of the nonzero eigenvalues, numerically
    eig = numpy.linalg.eigvals(numpy.array(w, dtype=float))
    nz = [z for z in eig if abs(z) > 1e-4]
    if s != 0 and len(nz) == n - next(i for i, c in enumerate(charpoly(w)) if c):
        assert abs(complex(numpy.prod(nz)) - float(s)) <= 1e-6 * max(1.0, abs(float(s)))
