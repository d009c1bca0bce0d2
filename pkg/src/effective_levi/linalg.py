"""Exact integer linear algebra: normal forms, saturation, LLL, sup-norm SVP.

Everything runs on Python integers and Fractions. The LLL routine is the
integral variant (Gram determinants ``d_i`` and scaled coefficients
``lambda_ij`` kept as integers), so every Lovasz comparison is exact, including
``delta = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, List, Optional, Tuple

from .errors import DependentBasisError, DimensionError, EffectiveLeviError, ResourceLimitError
from .matrix import (
    IntMatrix,
    det_bareiss,
    dot,
    identity,
    independent_rows,
    normalize,
    primitive,
    scale_to_integer,
    transpose,
)

DEFAULT_BUDGET = 10**7


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x a + y b = g = gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


# --------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class IntegerLattice:
    """Free Z-module spanned by independent integer vectors in Z^ambient_dim."""

    ambient_dim: int
    basis: Tuple[Tuple[int, ...], ...]

    def __init__(self, basis, ambient_dim: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in v) for v in basis)
        if ambient_dim is None:
            if not rows:
                raise DimensionError("ambient_dim is required for the zero lattice")
            ambient_dim = len(rows[0])
        if any(len(v) != ambient_dim for v in rows):
            raise DimensionError("basis vectors must all have length ambient_dim")
        if rows and len(independent_rows(rows)) != len(rows):
            raise DependentBasisError("lattice basis is linearly dependent")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", rows)

    @classmethod
    def standard(cls, n: int) -> "IntegerLattice":
        return cls(identity(n), n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[List[int]]:
        return [list(v) for v in self.basis]

    def contains(self, v) -> bool:
        return SpanSolver(self.vectors()).integral_coordinates(v) is not None


@dataclass(frozen=True)
class GramProfile:
    """Squared Gram-Schmidt lengths and the strictly upper triangular mu-coefficients.

    ``mu[i][j]`` (``i < j``) is the coefficient of the i-th Gram-Schmidt vector in
    the j-th basis vector, i.e. the matrix ``u`` of an Iwasawa decomposition.
    """

    squared_lengths: Tuple[Fraction, ...]
    mu: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def of_vectors(cls, vectors) -> "GramProfile":
        """Exact profile of a list of independent rational vectors."""
        vecs, den = scale_to_integer(vectors) if vectors else ([], 1)
        d, lam = _gram_schmidt_integral(vecs)
        n = len(vecs)
        sq = tuple(Fraction(d[i + 1], d[i] * den * den) for i in range(n))
        mu = tuple(
            tuple(Fraction(lam[j][i], d[i + 1]) if i < j else Fraction(0) for j in range(n))
            for i in range(n)
        )
        return cls(sq, mu)

    def is_size_reduced(self) -> bool:
        n = len(self.squared_lengths)
        return all(abs(self.mu[i][j]) <= Fraction(1, 2) for i in range(n) for j in range(i + 1, n))

    def consecutive_ratios(self) -> List[Fraction]:
        s = self.squared_lengths
        return [s[i] / s[i + 1] for i in range(len(s) - 1)]

    def is_siegel(self) -> bool:
        """``a_i^2 / a_{i+1}^2 <= 4/3`` and ``|mu| <= 1/2``, compared exactly."""
        return self.is_size_reduced() and all(r <= Fraction(4, 3) for r in self.consecutive_ratios())


def _gram_schmidt_integral(vecs):
    """Integral Gram-Schmidt data.

    Returns ``d`` (``d[0] = 1``, ``d[i]`` the Gram determinant of the first i vectors)
    and ``lam[k][j] = d[j+1] * mu_{k,j}`` for ``j < k``; all integers.
    """
    n = len(vecs)
    d = [1] + [0] * n
    lam = [[0] * n for _ in range(n)]
    for k in range(n):
        for j in range(k + 1):
            u = dot(vecs[k], vecs[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise DependentBasisError("vectors are linearly dependent")
                d[k + 1] = u
    return d, lam


# --------------------------------------------------------------------------
# Normal forms


def hermite_normal_form(a) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U A``, ``U`` unimodular, ``H`` in upper echelon
    form with positive pivots and every entry above a pivot in ``[0, pivot)``.
    Zero rows are collected at the bottom.
    """
    h = [[int(x) for x in row] for row in a]
    m = len(h)
    n = len(h[0]) if m else 0
    u = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = h[i][c]
            if b == 0:
                continue
            a0 = h[r][c]
            if a0 == 0:
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
                continue
            if b % a0 == 0:
                q = b // a0
                h[i] = [y - q * x for x, y in zip(h[r], h[i])]
                u[i] = [y - q * x for x, y in zip(u[r], u[i])]
                continue
            g, x, y = xgcd(a0, b)
            p, s = a0 // g, b // g
            hr, hi, ur, ui = h[r], h[i], u[r], u[i]
            h[r] = [x * e + y * f for e, f in zip(hr, hi)]
            h[i] = [p * f - s * e for e, f in zip(hr, hi)]
            u[r] = [x * e + y * f for e, f in zip(ur, ui)]
            u[i] = [p * f - s * e for e, f in zip(ur, ui)]
        piv = h[r][c]
        if piv == 0:
            continue
        if piv < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
            piv = -piv
        for i in range(r):
            q = h[i][c] // piv
            if q:
                h[i] = [y - q * x for x, y in zip(h[r], h[i])]
                u[i] = [y - q * x for x, y in zip(u[r], u[i])]
        r += 1
    return h, u


def smith_normal_form(a) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``D = U A V`` with ``d_1 | d_2 | ...`` and ``d_i >= 0``."""
    d = [[int(x) for x in row] for row in a]
    m = len(d)
    n = len(d[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def row_op(i, j, x, y, p, s):
        # rows (i, j) <- (x r_i + y r_j, p r_j - s r_i); determinant x p + y s = 1
        ri, rj = d[i], d[j]
        d[i] = [x * e + y * f for e, f in zip(ri, rj)]
        d[j] = [p * f - s * e for e, f in zip(ri, rj)]
        ui, uj = u[i], u[j]
        u[i] = [x * e + y * f for e, f in zip(ui, uj)]
        u[j] = [p * f - s * e for e, f in zip(ui, uj)]

    def col_op(i, j, x, y, p, s):
        for mat in (d, v):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i] = x * ci + y * cj
                row[j] = p * cj - s * ci

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return d, u, v
            i, j = best
            if i != t:
                d[t], d[i] = d[i], d[t]
                u[t], u[i] = u[i], u[t]
            if j != t:
                for mat in (d, v):
                    for row in mat:
                        row[t], row[j] = row[j], row[t]
            for i in range(t + 1, m):
                if d[i][t] % d[t][t] == 0:
                    if d[i][t]:
                        row_op(t, i, 1, 0, 1, d[i][t] // d[t][t])
                elif d[i][t]:
                    g, x, y = xgcd(d[t][t], d[i][t])
                    row_op(t, i, x, y, d[t][t] // g, d[i][t] // g)
            for j in range(t + 1, n):
                if d[t][j] % d[t][t] == 0:
                    if d[t][j]:
                        col_op(t, j, 1, 0, 1, d[t][j] // d[t][t])
                elif d[t][j]:
                    g, x, y = xgcd(d[t][t], d[t][j])
                    col_op(t, j, x, y, d[t][t] // g, d[t][j] // g)
            if any(d[i][t] for i in range(t + 1, m)):
                continue
            piv = d[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % piv),
                None,
            )
            if bad is None:
                break
            d[t] = [x + y for x, y in zip(d[t], d[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, v


def elementary_divisors(a) -> List[int]:
    dmat, _, _ = smith_normal_form(a)
    return [dmat[i][i] for i in range(min(len(dmat), len(dmat[0]) if dmat else 0)) if dmat[i][i]]


def is_saturated(vectors, ambient_dim: Optional[int] = None) -> bool:
    """True when the integer vectors span ``Q-span ∩ Z^n`` (all elementary divisors 1)."""
    if not vectors:
        return True
    divisors = elementary_divisors(vectors)
    return len(divisors) == len(vectors) and all(e == 1 for e in divisors)


def is_unimodular(u) -> bool:
    return len(u) == len(u[0]) and abs(det_bareiss(u)) == 1


# --------------------------------------------------------------------------
# Kernels and saturation


def kernel_saturated_basis(a, ambient_dim: Optional[int] = None, reduce: bool = True) -> List[List[int]]:
    """Z-basis of ``ker(A) ∩ Z^N`` for an integer matrix ``A`` (M x N).

    The basis comes from the transformation matrix of the Hermite form of
    ``A^T`` and is therefore saturated; it is then LLL-reduced (delta = 3/4) for
    small entries unless ``reduce`` is false.
    """
    rows = [[int(x) for x in row] for row in a]
    n = len(rows[0]) if rows else ambient_dim
    if n is None:
        raise DimensionError("cannot infer the number of columns")
    if not rows:
        return identity(n)
    h, u = hermite_normal_form(transpose(rows))
    r = sum(1 for row in h if any(row))
    basis = [u[i] for i in range(r, n)]
    if reduce and len(basis) > 1:
        basis, _ = lll_reduce_vectors(basis, Fraction(3, 4))
    return [list(v) for v in basis]


def saturate(vectors, ambient_dim: Optional[int] = None, reduce: bool = True) -> List[List[int]]:
    """Z-basis of ``(Q-span of vectors) ∩ Z^n``."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    ints = [primitive(scale_to_integer([r])[0][0]) for r in rows]
    annihilator = kernel_saturated_basis(ints, n, reduce=False)
    if not annihilator:
        basis = identity(n)
    else:
        basis = kernel_saturated_basis(annihilator, n, reduce=False)
    if reduce and len(basis) > 1:
        basis, _ = lll_reduce_vectors(basis, Fraction(3, 4))
    return [list(v) for v in basis]


class SpanSolver:
    """Coordinates of vectors in the Q-span of a fixed list of independent vectors."""

    def __init__(self, basis):
        self.basis = [list(v) for v in basis]
        k = len(self.basis)
        self.k = k
        if k == 0:
            self.pivots, self.adj, self.det = [], [], 1
            return
        ints, self.den = scale_to_integer(self.basis)
        # choose k independent columns of the k x n matrix
        cols = independent_rows(transpose(ints))
        if len(cols) != k:
            raise DependentBasisError("span basis is linearly dependent")
        self.pivots = cols
        sub = [[ints[i][c] for c in cols] for i in range(k)]  # k x k, rows = basis vectors
        self.det = det_bareiss(sub)
        self.adj = _adjugate(sub)
        self._ints = ints

    def coordinates(self, v) -> Optional[List]:
        """Rational coordinates ``c`` with ``sum c_i basis_i = v``, or None if v is outside the span."""
        if self.k == 0:
            return [] if all(x == 0 for x in v) else None
        # c · sub = v[pivots] * den  =>  c = v[piv] * den * adj / det
        target = [Fraction(v[c]) * self.den for c in self.pivots]
        c = [
            normalize(sum(t * self.adj[j][i] for j, t in enumerate(target)) / self.det)
            for i in range(self.k)
        ]
        recon = [sum(ci * b[j] for ci, b in zip(c, self.basis)) for j in range(len(v))]
        if any(x != y for x, y in zip(recon, v)):
            return None
        return c

    def integral_coordinates(self, v) -> Optional[List[int]]:
        c = self.coordinates(v)
        if c is None or any(Fraction(x).denominator != 1 for x in c):
            return None
        return [int(x) for x in c]


def _adjugate(m):
    """Adjugate of a square integer matrix: ``m · adj = det · I`` with rows as vectors."""
    n = len(m)
    if n == 1:
        return [[1]]
    # solve via fraction-free inverse: adj = det * inverse
    from .matrix import inverse

    dm = det_bareiss(m)
    if dm == 0:
        raise DependentBasisError("singular matrix")
    inv = inverse(m)
    return [[int(Fraction(x) * dm) for x in row] for row in inv]


# --------------------------------------------------------------------------
# LLL


def _check_delta(delta) -> Fraction:
    delta = Fraction(delta)
    if not (Fraction(1, 4) < delta <= 1):
        raise EffectiveLeviError("delta must satisfy 1/4 < delta <= 1")
    return delta


def lll_reduce_vectors(vectors, delta=Fraction(1)) -> Tuple[List[List[int]], List[List[int]]]:
    """Integral LLL on independent integer vectors.

    Returns ``(reduced, coeffs)`` where ``reduced[k] = sum_i coeffs[k][i] vectors[i]``.
    The output is size reduced (``|mu| <= 1/2``) and satisfies the Lovasz condition
    with parameter ``delta``; every test is an exact integer comparison.
    """
    delta = _check_delta(delta)
    dp, dq = delta.numerator, delta.denominator
    b = [[int(x) for x in v] for v in vectors]
    n = len(b)
    h = identity(n)
    if n == 0:
        return [], []
    d = [1] + [0] * n  # d[i] = Gram determinant of the first i vectors
    lam = [[0] * n for _ in range(n)]

    def gs_row(k):
        for j in range(k + 1):
            u = dot(b[k], b[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise DependentBasisError("LLL input is linearly dependent")
                d[k + 1] = u

    def redi(k, l):
        dl = d[l + 1]
        lkl = lam[k][l]
        if 2 * abs(lkl) > dl:
            q = (2 * lkl + dl) // (2 * dl)
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            h[k] = [x - q * y for x, y in zip(h[k], h[l])]
            lam[k][l] = lkl - q * dl
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        h[k], h[k - 1] = h[k - 1], h[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        dkm2, dkm1, dk = d[k - 1], d[k], d[k + 1]
        bb = (dkm2 * dk + lm * lm) // dkm1
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (dk * lam[i][k - 1] - lm * t) // dkm1
            lam[i][k - 1] = (bb * t + lm * lam[i][k]) // dk
        d[k] = bb

    gs_row(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gs_row(k)
        redi(k, k - 1)
        lm = lam[k][k - 1]
        if dq * (d[k + 1] * d[k - 1] + lm * lm) < dp * d[k] * d[k]:
            swapi(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                redi(k, l)
            k += 1
    return b, h


def lll_reduce(lattice: IntegerLattice, delta=Fraction(1)) -> Tuple[IntegerLattice, IntMatrix]:
    """LLL-reduce an :class:`IntegerLattice`.

    Returns ``(reduced, U)`` with the reduced basis vectors equal to the columns of
    ``basis · U`` when the basis vectors are viewed as columns.
    """
    red, coeffs = lll_reduce_vectors(lattice.vectors(), delta)
    return IntegerLattice(red, lattice.ambient_dim), transpose(coeffs) if coeffs else []


# --------------------------------------------------------------------------
# Enumeration


def _int_range(center: Fraction, radius_sq: Fraction) -> Tuple[int, int]:
    """Smallest and largest integers x with ``(x - center)^2 <= radius_sq``; empty if lo > hi."""
    if radius_sq < 0:
        return 1, 0
    p, q = radius_sq.numerator, radius_sq.denominator
    s = isqrt(p * q) // q  # floor(sqrt(radius_sq))
    fl = center.numerator // center.denominator
    lo0, hi0 = fl - s - 2, fl + s + 2
    hi = hi0
    while hi >= lo0 and (hi - center) ** 2 > radius_sq:
        hi -= 1
    lo = lo0
    while lo <= hi and (lo - center) ** 2 > radius_sq:
        lo += 1
    return lo, hi


def _nearest_first(lo: int, hi: int, center: Fraction):
    """Integers of ``[lo, hi]`` ordered by distance to ``center``, smaller first on ties."""
    down = min(max(center.numerator // center.denominator, lo - 1), hi)
    up = down + 1
    while down >= lo or up <= hi:
        if up > hi or (down >= lo and center - down <= up - center):
            yield down
            down -= 1
        else:
            yield up
            up += 1


def _cube_range(above, row, r: Fraction, lo: int, hi: int) -> Tuple[int, int]:
    """Subrange of ``[lo, hi]`` of t with ``||above + t row||_inf^2 <= r``; empty if lo > hi."""
    cube = isqrt(r.numerator // r.denominator)
    for a, e in zip(above, row):
        if e == 0:
            if abs(a) > cube:
                return 1, 0
        else:
            if e < 0:
                a, e = -a, -e
            lo = max(lo, -((cube + a) // e))
            hi = min(hi, (cube - a) // e)
    return lo, hi


class Enumerator:
    """Fincke-Pohst enumeration of short vectors in a lattice given by integer vectors.

    ``visit(coeffs, vector)`` is called for every nonzero lattice vector (up to sign)
    of squared Euclidean length at most the current radius ``r`` whose sup norm is at
    most ``sqrt(r / n)``; it may return a new, smaller squared radius. Visitors must
    therefore ignore vectors outside that cube. Coefficients refer to the vectors as given.
    """

    def __init__(self, vectors, budget: int = DEFAULT_BUDGET):
        self.orig = [[int(x) for x in v] for v in vectors]
        self.k = len(self.orig)
        self.budget = budget
        red, coeffs = lll_reduce_vectors(self.orig, Fraction(99, 100))
        self.red = red
        self.coeffs = coeffs  # red[k] = sum coeffs[k][i] orig[i]
        d, lam = _gram_schmidt_integral(red)
        self.B = [Fraction(d[i + 1], d[i]) for i in range(self.k)]
        self.mu = [[Fraction(lam[i][j], d[j + 1]) for j in range(self.k)] for i in range(self.k)]
        self.nodes = 0

    def run(self, radius_sq, visit: Callable, nonzero_last: bool = False) -> int:
        """Enumerate; with ``nonzero_last`` vectors whose last entry is 0 are skipped."""
        radius_sq = Fraction(radius_sq)
        k = self.k
        x = [0] * k
        state = {"r": radius_sq}
        B, mu, red = self.B, self.mu, self.red
        n = len(red[0]) if red else 0

        coeffs = self.coeffs
        # flat_below[l]: rows 0..l all have last entry 0
        flat_below = []
        for row in red:
            flat_below.append(row[-1] == 0 and (not flat_below or flat_below[-1]))
        # settled[l]: coordinates where rows 0..l-1 vanish, so x[l..k-1] fix them
        settled = [[j for j in range(n) if all(red[i][j] == 0 for i in range(level))] for level in range(k)]
        # vec_at[l] / coeff_at[l]: contribution of x[l], ..., x[k-1], kept incrementally
        vec_at = [[0] * n for _ in range(k + 1)]
        coeff_at = [[0] * k for _ in range(k + 1)]

        def rec(level, partial, all_zero_above):
            self.nodes += 1
            if self.nodes > self.budget:
                raise ResourceLimitError(
                    f"enumeration exceeded the node budget of {self.budget}", nodes=self.nodes
                )
            center = -sum((mu[i][level] * x[i] for i in range(level + 1, k)), Fraction(0))
            rem = (state["r"] - partial) / B[level]
            lo, hi = _int_range(center, rem)
            if all_zero_above:
                lo = max(lo, 0)
            if lo > hi:
                return
            above_v, above_c = vec_at[level + 1], coeff_at[level + 1]
            row_v, row_c = red[level], coeffs[level]
            if nonzero_last and flat_below[level] and above_v[-1] == 0:
                return
            # keep only t whose settled coordinates lie in the sup-norm cube
            idx = settled[level]
            above_s = [above_v[j] for j in idx]
            row_s = [row_v[j] for j in idx]
            seen = state["r"]
            lo, hi = _cube_range(above_s, row_s, seen / n, lo, hi)
            if lo > hi:
                return
            for t in _nearest_first(lo, hi, center):
                if state["r"] != seen:
                    seen = state["r"]
                    lo, hi = _cube_range(above_s, row_s, seen / n, lo, hi)
                if not lo <= t <= hi:
                    continue
                diff = t - center
                newp = partial + B[level] * diff * diff
                if newp > state["r"]:
                    continue
                x[level] = t
                if level == 0 and all_zero_above and t == 0:
                    continue
                if level == 0 and nonzero_last and above_v[-1] + t * row_v[-1] == 0:
                    continue
                vec = [a + t * r for a, r in zip(above_v, row_v)]
                coeff = [a + t * r for a, r in zip(above_c, row_c)]
                if level == 0:
                    new = visit(coeff, vec)
                    if new is not None and new < state["r"]:
                        state["r"] = Fraction(new)
                else:
                    vec_at[level], coeff_at[level] = vec, coeff
                    rec(level - 1, newp, all_zero_above and t == 0)
            x[level] = 0

        if k:
            rec(k - 1, Fraction(0), True)
        return self.nodes


def shortest_vector_sup(lattice: IntegerLattice, g=None, budget: int = DEFAULT_BUDGET):
    """Minimum over nonzero ``w`` in the lattice of ``||g w||_inf``.

    Returns ``(v, value)`` with ``v`` a lattice vector (ambient coordinates) attaining
    the minimum. Ties are broken by the lexicographically smallest sign-normalized
    witness. The enumeration radius is sqrt(n) times the best sup-norm seen so far,
    which contains every vector that could improve it, so the answer is exact.
    """
    basis = lattice.vectors()
    n = lattice.ambient_dim
    if not basis:
        raise DimensionError("zero lattice has no nonzero vectors")
    if g is None:
        images = basis
        den = 1
        m = n
    else:
        if len(g[0]) != n:
            raise DimensionError("target matrix does not match the lattice")
        from .matrix import mat_vec

        imgs = [mat_vec(g, v) for v in basis]
        images, den = scale_to_integer(imgs)
        m = len(g)
    enum = Enumerator(images, budget)
    best = {"val": None, "w": None}

    def key(w):
        return primitive(w)

    def consider(coeff, vec):
        s = max(abs(t) for t in vec)
        w = [sum(c * basis[i][j] for i, c in enumerate(coeff)) for j in range(n)]
        if best["val"] is None or s < best["val"] or (s == best["val"] and key(w) < key(best["w"])):
            best["val"], best["w"] = s, w
            return Fraction(m * s * s)
        return None

    for i, v in enumerate(enum.red):
        consider(enum.coeffs[i], v)
    enum.run(Fraction(m * best["val"] ** 2), consider)
    w = best["w"]
    first = next(x for x in w if x)
    if first < 0:
        w = [-x for x in w]
    return w, normalize(Fraction(best["val"], den))
