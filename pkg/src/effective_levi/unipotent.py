"""Exact exp/log for nilpotent matrices and small lifts in unipotent groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional, Tuple

from .errors import InvariantViolation, NotInAlgebraError, NotNilpotentError
from .lie import LieSubalgebra, from_coords, lower_central_series
from .linalg import IntegerLattice
from .matrix import (
    as_matrix,
    identity,
    is_zero,
    mat_add,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sub,
    normalize,
    rank,
    sup_norm,
)
from .siegel import extract_small_basis


def _is_nilpotent(x) -> bool:
    return is_zero(mat_pow(x, len(x)))


def exp_nilpotent(x):
    """``sum_{k<N} x^k / k!`` for a nilpotent matrix x."""
    x = as_matrix(x)
    n = len(x)
    if not _is_nilpotent(x):
        raise NotNilpotentError("exp_nilpotent needs x^N = 0")
    out = identity(n)
    term = identity(n)
    for k in range(1, n):
        term = mat_scale(Fraction(1, k), mat_mul(term, x))
        if is_zero(term):
            break
        out = mat_add(out, term)
    return out


def log_unipotent(u):
    """``sum_{k<N} (-1)^(k+1) (u - I)^k / k`` for a unipotent matrix u."""
    u = as_matrix(u)
    n = len(u)
    y = mat_sub(u, identity(n))
    if not _is_nilpotent(y):
        raise NotNilpotentError("log_unipotent needs (u - I)^N = 0")
    out = [[0] * n for _ in range(n)]
    power = identity(n)
    for k in range(1, n):
        power = mat_mul(power, y)
        if is_zero(power):
            break
        out = mat_add(out, mat_scale(Fraction((-1) ** (k + 1), k), power))
    return out


class NilpotentAlgebra:
    """A subalgebra of nilpotent matrices with a Mal'cev basis.

    ``malcev`` is a Z-basis of the integral points ordered deepest layer first:
    its prefixes span the terms of the lower central series. ``layers[j]`` lists
    the indices of the basis vectors spanning ``C^(j+1) / C^(j+2)``.
    """

    def __init__(self, underlying: LieSubalgebra):
        self.underlying = underlying
        for x in underlying.basis:
            if not _is_nilpotent(x):
                raise NotNilpotentError("basis element is not a nilpotent matrix")
        series = lower_central_series(underlying)
        if series[-1].dim:
            raise NotNilpotentError("lower central series does not reach zero")
        self.series = series
        self.nilpotency_class = len(series) - 1
        m = underlying.dim
        gc = underlying._solver.integral_coordinates
        u: List[List[int]] = []
        sizes = []
        for term in reversed(series[:-1]):  # deepest term first
            before = len(u)
            for v in term.coords:
                c = gc(list(v))
                if rank(u + [c]) > len(u):
                    u.append(c)
            sizes.append(len(u) - before)
        basis = extract_small_basis(IntegerLattice.standard(m), u) if m else []
        self.malcev = [underlying.vector_from_gcoords(c) for c in basis]
        self.malcev_matrices = [from_coords(v, underlying.N) for v in self.malcev]
        self._malcev_alg = LieSubalgebra.from_zbasis(underlying.N, self.malcev) if m else underlying
        # layers from the top of the series downwards
        layers = []
        end = m
        for s in reversed(sizes):
            layers.append(list(range(end - s, end)))
            end -= s
        self.layers = layers

    @property
    def N(self) -> int:
        return self.underlying.N

    @property
    def dim(self) -> int:
        return self.underlying.dim

    def coordinates(self, x) -> Optional[List]:
        """Coordinates of a matrix in the Mal'cev basis, or None when outside the algebra."""
        return self._malcev_alg.coordinates_of(x)

    def element(self, c):
        return from_coords(self._malcev_alg.vector_from_gcoords(c), self.N)


@dataclass
class UnipotentReduction:
    """``h' = h gamma`` with the Mal'cev coordinates of ``log h'`` in ``[-N!/2, N!/2)``."""

    gamma: List[List]
    h_prime: List[List]
    coordinates: List
    h_prime_size: Fraction
    steps: List[List[int]]


def _round_shift(c, modulus: int) -> int:
    """``floor((c + modulus/2) / modulus)``: the multiple of modulus to subtract."""
    c = Fraction(c)
    num = 2 * c + modulus
    q = num / (2 * modulus)
    return q.numerator // q.denominator


def unipotent_reduce(h, r: NilpotentAlgebra, bound: Optional[Tuple[float, float]] = None) -> UnipotentReduction:
    """Multiply h on the right by an integral unipotent ``gamma`` to make it small.

    Layer by layer down the lower central series, the layer coordinates of
    ``log h`` are shifted into ``[-N!/2, N!/2)`` by
    ``gamma_j = exp(-N! sum n_i z_i)``; the logarithm is recomputed exactly after
    each step, so all BCH corrections are included. ``bound = (C, kappa)``
    asserts ``|h'| <= C ht(r)^kappa``.
    """
    h = as_matrix(h)
    n = len(h)
    if n != r.N:
        raise NotInAlgebraError("h and r live in different dimensions")
    fact = factorial(n)
    x = log_unipotent(h)
    c = r.coordinates(x)
    if c is None:
        raise NotInAlgebraError("log h is not in the algebra")
    gamma = identity(n)
    cur = h
    steps = []
    for layer in r.layers:
        shifts = [_round_shift(c[i], fact) for i in layer]
        steps.append(shifts)
        if not any(shifts):
            continue
        coeff = [0] * r.dim
        for i, s in zip(layer, shifts):
            coeff[i] = -fact * s
        gj = exp_nilpotent(r.element(coeff))
        gamma = mat_mul(gamma, gj)
        new = mat_mul(cur, gj)
        newc = r.coordinates(log_unipotent(new))
        for prev_layer in r.layers:
            if prev_layer is layer:
                break
            if any(newc[i] != c[i] for i in prev_layer):
                raise InvariantViolation("reduction changed an already reduced layer")
        cur, c = new, newc
    half = Fraction(fact, 2)
    if any(not (-half <= Fraction(t) < half) for t in c):
        raise InvariantViolation("Mal'cev coordinates were not reduced")
    if any(Fraction(v).denominator != 1 for row in gamma for v in row):
        raise InvariantViolation("gamma is not integral")
    size = Fraction(sup_norm(cur))
    if bound is not None:
        from .lie import height

        C, kappa = bound
        if float(size) > C * float(height(r.underlying)) ** kappa:
            raise InvariantViolation("|h'| exceeds the configured bound")
    return UnipotentReduction(
        [[normalize(v) for v in row] for row in gamma],
        [[normalize(v) for v in row] for row in cur],
        [normalize(t) for t in c],
        size,
        steps,
    )
