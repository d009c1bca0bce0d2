"""Small solutions of integral linear systems.

* :func:`siegel_kernel_basis` -- a rational basis of ``ker A`` made of integer
  vectors whose entries are bounded by ``sqrt(det(A A^T))``.
* :func:`siegel_inhomogeneous` -- a small solution ``y / d`` of ``A x = b``.
* :func:`extract_small_basis` -- a Z-basis adapted to a flag of Q-subspaces,
  with the telescoping norm bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .errors import (
    DependentBasisError,
    DimensionError,
    EffectiveLeviError,
    InfeasibleError,
    InvariantViolation,
    RankDeficientError,
    ResourceLimitError,
)
from .linalg import (
    DEFAULT_BUDGET,
    Enumerator,
    IntegerLattice,
    SpanSolver,
    hermite_normal_form,
    kernel_saturated_basis,
    lll_reduce_vectors,
)
from .matrix import det_bareiss, independent_rows, inverse, mat_mul, rank, sup_norm, transpose


def _as_int_matrix(a) -> List[List[int]]:
    out = []
    for row in a:
        r = []
        for x in row:
            if Fraction(x).denominator != 1:
                raise EffectiveLeviError("coefficient matrix must be integral")
            r.append(int(x))
        out.append(r)
    return out


def siegel_bound_squared(a) -> int:
    """``det(A A^T)``; the squared entry bound of the kernel basis."""
    a = _as_int_matrix(a)
    return det_bareiss(mat_mul(a, transpose(a)))


def siegel_kernel_basis(a, budget: int = DEFAULT_BUDGET) -> List[List[int]]:
    """Integer basis of the rational kernel of a full-rank M x N matrix, N > M.

    Every entry ``x`` of the output satisfies ``x**2 <= det(A A^T)``. The basis is
    the exact-LLL (delta = 1) reduction of the saturated kernel lattice; if some
    entry still exceeds the bound, the kernel vectors under the bound are
    enumerated and a basis is picked greedily by sup-norm (successive minima).
    """
    a = _as_int_matrix(a)
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        raise DimensionError("empty coefficient matrix")
    if n <= m:
        raise DimensionError("need more unknowns than equations (N > M)")
    if rank(a) != m:
        raise RankDeficientError(
            "coefficient matrix is rank deficient; drop the redundant rows first"
        )
    bound_sq = det_bareiss(mat_mul(a, transpose(a)))
    kernel = kernel_saturated_basis(a, reduce=False)
    basis, _ = lll_reduce_vectors(kernel, Fraction(1))
    if all(x * x <= bound_sq for v in basis for x in v):
        return [list(v) for v in basis]
    return _kernel_by_enumeration(basis, bound_sq, budget)


def _kernel_by_enumeration(basis, bound_sq, budget):
    n = len(basis[0])
    beta = math.isqrt(bound_sq)
    found = []

    def visit(coeff, vec):
        if max(abs(x) for x in vec) <= beta:
            found.append(vec)
        return None

    Enumerator(basis, budget).run(Fraction(n * beta * beta), visit)
    found.sort(key=lambda v: (max(abs(x) for x in v), v))
    chosen: List[List[int]] = []
    for v in found:
        if len(independent_rows(chosen + [v])) == len(chosen) + 1:
            chosen.append(v)
            if len(chosen) == len(basis):
                return chosen
    raise InvariantViolation("no kernel basis under the Siegel bound was found")


@dataclass
class InhomogeneousSolution:
    """Solution ``x = y / d`` of ``A x = b`` plus the size data the harness records."""

    y: List[int]
    d: int
    input_size: int
    achieved: int
    minimal: bool = True
    exponent: Optional[float] = field(default=None)

    @property
    def x(self) -> List[Fraction]:
        return [Fraction(t, self.d) for t in self.y]


def siegel_inhomogeneous(a, b, budget: int = DEFAULT_BUDGET) -> InhomogeneousSolution:
    """Small rational solution ``y / d`` of a consistent system ``A x = b``.

    The pairs ``(y, d)`` with ``A y = d b`` form the kernel lattice of ``[A | -b]``;
    the returned pair minimizes ``max(|y_i|, |d|)`` over the vectors with
    ``d != 0`` (found by exact enumeration, ties going to the first vector met;
    if the node budget runs out the best candidate so far is returned and
    ``minimal`` is False). Raises
    :class:`InfeasibleError` with a certificate ``z`` (``z A = 0``, ``z b != 0``)
    when the system is inconsistent.
    """
    a = _as_int_matrix(a)
    b = [int(Fraction(t)) if Fraction(t).denominator == 1 else None for t in b]
    if any(t is None for t in b):
        raise EffectiveLeviError("right-hand side must be integral")
    m = len(a)
    if m != len(b):
        raise DimensionError("A and b have different numbers of rows")
    n = len(a[0]) if m else 0
    size = max([abs(x) for row in a for x in row] + [abs(t) for t in b] + [1])
    if all(t == 0 for t in b):
        return InhomogeneousSolution([0] * n, 1, size, 1, True, 0.0)

    aug = [row + [-t] for row, t in zip(a, b)]
    rows = independent_rows(aug)
    if rank([a[i] for i in rows]) < len(rows):
        cert = _infeasibility_certificate(a, b)
        raise InfeasibleError("linear system is inconsistent", cert)
    reduced = [aug[i] for i in rows]
    lattice = kernel_saturated_basis(reduced, n + 1, reduce=False)
    lattice, _ = lll_reduce_vectors(lattice, Fraction(99, 100))

    best = {"v": None, "s": None}

    def consider(coeff, vec):
        if vec[-1] == 0:
            return None
        s = max(abs(x) for x in vec)
        if best["s"] is None or s < best["s"]:
            best["v"], best["s"] = vec, s
            # only strict improvements from here on
            return Fraction((n + 1) * (s - 1) ** 2)
        return None

    for v in lattice:
        if v[-1] and (best["s"] is None or (max(map(abs, v)), _sign_normal(v)) < (best["s"], _sign_normal(best["v"]))):
            best["v"], best["s"] = v, max(map(abs, v))
    if best["v"] is None:  # pragma: no cover - consistency guarantees a d != 0 vector
        raise InvariantViolation("no solution with nonzero denominator in the kernel lattice")
    minimal = True
    try:
        Enumerator(lattice, budget).run(Fraction((n + 1) * (best["s"] - 1) ** 2), consider, nonzero_last=True)
    except ResourceLimitError:
        minimal = False
    v = best["v"]
    if v[-1] < 0:
        v = [-x for x in v]
    y, d = v[:-1], v[-1]
    g = math.gcd(d, *y)
    y, d = [t // g for t in y], d // g
    for row, t in zip(a, b):
        if sum(c * x for c, x in zip(row, y)) != d * t:
            raise InvariantViolation("inhomogeneous solution does not satisfy the system")
    achieved = max([abs(t) for t in y] + [d])
    exponent = math.log(achieved) / math.log(size) if size > 1 else None
    return InhomogeneousSolution(y, d, size, achieved, minimal, exponent)


def _sign_normal(v):
    first = next((x for x in v if x), 0)
    return [-x for x in v] if first < 0 else list(v)


def _infeasibility_certificate(a, b) -> List[int]:
    for z in kernel_saturated_basis(transpose(a), len(a)):
        if sum(zi * bi for zi, bi in zip(z, b)) != 0:
            return z
    raise InvariantViolation("inconsistent system without a certificate")


def extract_small_basis(vz: Optional[IntegerLattice], u) -> List[List[int]]:
    """Z-basis ``v`` of ``vz`` adapted to the flag spanned by the prefixes of ``u``.

    For each i, ``v[:i]`` is a Z-basis of ``(Q u_1 + ... + Q u_i) ∩ vz`` and
    ``||v_i|| <= sum_{j <= i} ||u_j||`` in the sup norm. The change of basis is the
    row-style Hermite form of the coordinate matrix of ``u``, followed by reducing
    the coordinates of each ``v_i`` along ``u_j`` (j < i) into ``[0, 1)``; both
    steps are deterministic.
    """
    u = [[int(x) for x in vec] for vec in u]
    if vz is None:
        if not u:
            return []
        vz = IntegerLattice.standard(len(u[0]))
    if len(u) != vz.rank:
        raise DimensionError("need exactly rank(vz) vectors")
    if not u:
        return []
    base = vz.vectors()
    solver = SpanSolver(base)
    coords = []
    for vec in u:
        c = solver.integral_coordinates(vec)
        if c is None:
            raise EffectiveLeviError("vector u_i does not lie in the lattice")
        coords.append(c)
    if len(independent_rows(coords)) != len(coords):
        raise DependentBasisError("vectors u are linearly dependent")
    cmat = transpose(coords)  # column j = coordinates of u_j
    h, umat = hermite_normal_form(cmat)
    uinv = [[int(x) for x in row] for row in inverse(umat)]
    k = len(base)
    n = vz.ambient_dim
    v = [
        [sum(uinv[r][i] * base[r][j] for r in range(k)) for j in range(n)]
        for i in range(k)
    ]
    # v_i = c_i u_i + sum_{j<i} c_j u_j; moving each c_j (j < i) into [0, 1) by
    # subtracting u_j in L_{i-1} keeps the flag and gives the norm bound
    usolver = SpanSolver(u)
    for i in range(k):
        c = usolver.coordinates(v[i])
        for j in range(i):
            f = math.floor(c[j])
            if f:
                v[i] = [a - f * b for a, b in zip(v[i], u[j])]
    running = 0
    for i in range(k):
        running += sup_norm(u[i])
        if sup_norm(v[i]) > running:
            raise InvariantViolation("telescoping norm bound failed")
    return v
