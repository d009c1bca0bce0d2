"""Effective Levi decomposition and flag standardization of the radical.

The decomposition recurses on the derived length of the radical ``r``. At each
level a linear map ``f: g -> r/[r,r]`` is found that restricts to the projection
on ``r``, kills the prescribed reductive part ``l`` and is a 1-cocycle for the
action of g on ``r/[r,r]``. Its kernel is a subalgebra whose radical is
``[r,r]``, so the recursion ends at a semisimple algebra, which is a Levi factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .errors import (
    InfeasibleError,
    InvariantViolation,
    NotNilpotentError,
    PreconditionError,
)
from .lie import (
    LieSubalgebra,
    derived_algebra,
    height,
    is_reductive,
    killing_form,
    radical,
    bracket,
)
from .linalg import DEFAULT_BUDGET, IntegerLattice, hermite_normal_form, lll_reduce_vectors, saturate
from .matrix import det, identity, independent_rows, inverse, mat_mul, mat_vec, rank, sup_norm, transpose
from .siegel import extract_small_basis, siegel_inhomogeneous, siegel_kernel_basis


@dataclass
class LeviDecomposition:
    """``g = h ⊕ r`` with the heights recorded for the exponent harness.

    ``levels`` holds one record per recursion step (dimensions, size of the
    linear system and the size of the small solution that was used).
    """

    g: LieSubalgebra
    h: LieSubalgebra
    r: LieSubalgebra
    l: Optional[LieSubalgebra]
    T: int
    ht_h: int
    ht_r: int
    depth: int
    levels: List[Dict] = field(default_factory=list)

    def failures(self) -> List[str]:
        return levi_failures(self.g, self.h, self.r, self.l)

    def is_valid(self) -> bool:
        return not self.failures()


def levi_failures(g: LieSubalgebra, h: LieSubalgebra, r: LieSubalgebra, l=None) -> List[str]:
    """Names of the validity conditions that fail; empty when ``(h, r)`` is a Levi decomposition."""
    out = []
    if not g.contains_algebra(h):
        out.append("h is not contained in g")
    if not g.contains_algebra(r):
        out.append("r is not contained in g")
    if h.dim + r.dim != g.dim:
        out.append("dim h + dim r != dim g")
    elif (h.dim + r.dim) and rank([list(v) for v in h.coords + r.coords]) != g.dim:
        out.append("h and r intersect")
    if not r.same_space(radical(g)):
        out.append("r is not the radical of g")
    if h.dim and det(killing_form(h)) == 0:
        out.append("Killing form of h is degenerate")
    if l is not None and not h.contains_algebra(l):
        out.append("l is not contained in h")
    for x in h.basis:
        for y in r.basis:
            if not r.contains(bracket(x, y)):
                out.append("[h, r] is not contained in r")
                return out
    return out


def _greedy_extend(current, candidates):
    out = list(current)
    for v in candidates:
        if rank(out + [v]) > len(out):
            out.append(v)
    return out


def effective_levi(
    g: LieSubalgebra,
    l: Optional[LieSubalgebra] = None,
    *,
    budget: int = DEFAULT_BUDGET,
) -> LeviDecomposition:
    """Levi decomposition of g with ``l ⊆ h`` when a reductive ``l`` is supplied.

    The computation starts from an LLL-reduced Z-basis of the integral points of
    g, so the sizes entering the linear systems track ``ht(g)`` rather than the
    basis the caller happened to supply.
    """
    g_in = g
    if g.dim > 1:
        reduced, _ = lll_reduce_vectors([list(v) for v in g.coords], Fraction(99, 100))
        g = LieSubalgebra.from_zbasis(g.N, reduced)
    r = radical(g)
    if l is not None:
        if l.N != g.N:
            raise PreconditionError("l and g live in different sl_N")
        if not g.contains_algebra(l):
            raise PreconditionError("l is not contained in g")
        if not is_reductive(l):
            raise PreconditionError("l is not reductive with a toral center")
        if l.dim and r.dim and rank([list(v) for v in l.coords + r.coords]) < l.dim + r.dim:
            raise PreconditionError("l meets the radical of g")
    levels: List[Dict] = []
    h = _levi_recursive(g, r, l, levels, budget)
    out = LeviDecomposition(
        g=g_in,
        h=h,
        r=r,
        l=l,
        T=height(g),
        ht_h=height(h),
        ht_r=height(r),
        depth=len(levels),
        levels=levels,
    )
    fails = out.failures()
    if fails:
        raise InvariantViolation("Levi decomposition failed verification: " + "; ".join(fails))
    return out


def _levi_recursive(g, r, l, levels, budget) -> LieSubalgebra:
    if r.dim == 0:
        return g
    M = g.dim
    rr = derived_algebra(r)
    gc = g._solver.integral_coordinates
    rrc = [gc(list(v)) for v in rr.coords]
    rc = [gc(list(v)) for v in r.coords]
    lc = [gc(list(v)) for v in l.coords] if l is not None else []
    m1, m = len(rrc), r.dim
    u = _greedy_extend(rrc, rc)
    u = _greedy_extend(u, lc)
    u = _greedy_extend(u, identity(M))
    adapted = extract_small_basis(IntegerLattice.standard(M), u)
    b = LieSubalgebra.from_zbasis(g.N, [g.vector_from_gcoords(c) for c in adapted])
    alpha = b.structure_constants
    q = m - m1

    def var(t, j):
        return t * M + j

    nvar = q * M
    rows, rhs = [], []
    # f restricted to r is the projection onto r/[r,r]
    for j in range(m):
        for t in range(q):
            row = [0] * nvar
            row[var(t, j)] = 1
            rows.append(row)
            rhs.append(1 if j >= m1 and j - m1 == t else 0)
    # l lies in the kernel
    if l is not None:
        from .matrix import integer_rows

        for c in integer_rows([b.coordinates_of(list(v)) for v in l.coords]):
            for t in range(q):
                row = [0] * nvar
                for j, cj in enumerate(c):
                    if cj:
                        row[var(t, j)] = cj
                rows.append(row)
                rhs.append(0)
    # cocycle condition f([u_i,u_j]) = rho(u_i) f(u_j) - rho(u_j) f(u_i)
    rho = [[[alpha[i][m1 + s][m1 + t] for s in range(q)] for t in range(q)] for i in range(M)]
    for i in range(M):
        for j in range(i + 1, M):
            aij = alpha[i][j]
            for t in range(q):
                row = [0] * nvar
                for k in range(M):
                    if aij[k]:
                        row[var(t, k)] += aij[k]
                for s in range(q):
                    if rho[i][t][s]:
                        row[var(s, j)] -= rho[i][t][s]
                    if rho[j][t][s]:
                        row[var(s, i)] += rho[j][t][s]
                if any(row):
                    rows.append(row)
                    rhs.append(0)
    aug = [row + [c] for row, c in zip(rows, rhs)]
    keep = independent_rows(aug)
    try:
        sol = siegel_inhomogeneous([rows[i] for i in keep], [rhs[i] for i in keep], budget=budget)
    except InfeasibleError as exc:
        raise InvariantViolation("the linear system for the Levi map has no solution") from exc
    fprime = [[sol.y[var(t, j)] for j in range(M)] for t in range(q)]
    if q == M:
        kern = []
        g1 = LieSubalgebra.zero(g.N)
    else:
        kern = siegel_kernel_basis(fprime, budget=budget)
        kz = extract_small_basis(IntegerLattice(saturate(kern), M), kern)
        g1 = LieSubalgebra.from_zbasis(g.N, [b.vector_from_gcoords(c) for c in kz])
    r1 = radical(g1)
    if not r1.same_space(rr):
        raise InvariantViolation("radical of ker f differs from [r, r]")
    levels.append(
        {
            "dim_g": M,
            "dim_r": m,
            "dim_rr": m1,
            "unknowns": nvar,
            "equations": len(keep),
            "d": sol.d,
            "achieved": sol.achieved,
            "input_size": sol.input_size,
            "minimal": sol.minimal,
            "kernel_sup": max(sup_norm(v) for v in kern) if kern else 0,
        }
    )
    return _levi_recursive(g1, rr if rr.dim else LieSubalgebra.zero(g.N), l, levels, budget)


# --------------------------------------------------------------------------
# Flag standardization


@dataclass
class FlagStandardization:
    """``delta`` in SL_N(Z) moving the flag of r to a standard coordinate flag.

    ``flag[k]`` is a saturated basis of ``V_k`` (``V_0 = Q^N``), and
    ``complements[i]`` are the columns of ``delta^{-1}`` forming the i-th block,
    deepest level first.
    """

    delta: List[List[int]]
    flag: List[List[List[int]]]
    complements: List[List[List[int]]]
    block_sizes: List[int]

    @property
    def delta_size(self) -> int:
        return sup_norm(self.delta)


def hnf_basis(vectors) -> List[List[int]]:
    """Canonical basis of a lattice: the nonzero rows of its Hermite normal form."""
    hmat, _ = hermite_normal_form(vectors)
    return [row for row in hmat if any(row)]


def _flag_chain(r: LieSubalgebra) -> List[List[List[int]]]:
    n = r.N
    mats = r.basis
    chain = [identity(n)]
    while chain[-1]:
        cur = chain[-1]
        imgs = [mat_vec(x, v) for x in mats for v in cur]
        imgs = [w for w in imgs if any(w)]
        nxt = hnf_basis(saturate(imgs, n, reduce=False)) if imgs else []
        if len(nxt) == len(cur):
            raise NotNilpotentError("the radical does not act nilpotently; the flag does not terminate")
        chain.append(nxt)
    return chain


def standardize_radical(g: LieSubalgebra, h: LieSubalgebra, r: LieSubalgebra) -> FlagStandardization:
    """Unimodular ``delta`` making ``r`` strictly and ``h`` weakly block upper triangular."""
    n = g.N
    if r.dim == 0:
        return FlagStandardization(identity(n), [identity(n)], [identity(n)], [n])
    chain = _flag_chain(r)  # V_0, V_1, ..., V_M, [] (last is zero)
    levels = chain[:-1]
    u: List[List[int]] = []
    sizes = []
    for basis in reversed(levels):
        before = len(u)
        u = _greedy_extend(u, basis)
        sizes.append(len(u) - before)
    p = extract_small_basis(IntegerLattice.standard(n), u)
    pmat = transpose(p)
    if det(pmat) == -1:
        for row in pmat:
            row[-1] = -row[-1]
    delta = [[int(x) for x in row] for row in inverse(pmat)]
    blocks = []
    start = 0
    for s in sizes:
        blocks.append([[row[c] for row in pmat] for c in range(start, start + s)])
        start += s
    out = FlagStandardization(delta, levels, blocks, sizes)
    _check_standard(out, g, h, r, pmat)
    return out


def block_index(sizes: List[int]) -> List[int]:
    idx = []
    for b, s in enumerate(sizes):
        idx += [b] * s
    return idx


def _check_standard(st: FlagStandardization, g, h, r, pmat):
    idx = block_index(st.block_sizes)
    n = len(idx)
    if det(st.delta) != 1:
        raise InvariantViolation("delta does not have determinant 1")
    for x in r.basis:
        y = mat_mul(st.delta, mat_mul(x, pmat))
        if any(y[a][c] for a in range(n) for c in range(n) if idx[a] >= idx[c]):
            raise InvariantViolation("conjugated radical is not strictly block upper triangular")
    for x in h.basis:
        y = mat_mul(st.delta, mat_mul(x, pmat))
        if any(y[a][c] for a in range(n) for c in range(n) if idx[a] > idx[c]):
            raise InvariantViolation("conjugated Levi factor is not block upper triangular")
        for vk in st.flag:
            if rank(vk + [w for w in (mat_vec(x, v) for v in vk) if any(w)]) > len(vk):
                raise InvariantViolation("Levi factor does not preserve the flag")


def is_standard(st: FlagStandardization, h: LieSubalgebra, r: LieSubalgebra) -> bool:
    """Re-check the triangularity conditions for a stored standardization."""
    try:
        pmat = [[int(x) for x in row] for row in inverse(st.delta)]
        _check_standard(st, None, h, r, pmat)
    except InvariantViolation:
        return False
    return True
