"""Rational Lie subalgebras of sl_N.

Elements of sl_N are handled in canonical coordinates: the off-diagonal entries
``E_ij`` in row-major order, followed by the coefficients of
``h_i = E_ii - E_{i+1,i+1}`` (``i = 1..N-1``). An integer matrix has integer
coordinates and conversely, so ``sl_N(Z)`` is exactly ``Z^(N^2-1)`` and the max
norm of a coordinate vector is the norm used for every height below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionError, EffectiveLeviError, NotInAlgebraError
from .linalg import IntegerLattice, SpanSolver, is_saturated, kernel_saturated_basis, saturate
from .matrix import (
    identity,
    independent_rows,
    integer_rows,
    mat_mul,
    mat_vec,
    normalize,
    primitive,
    rank,
    trace,
)
from .siegel import extract_small_basis, siegel_kernel_basis

# --------------------------------------------------------------------------
# sl_N coordinates


@lru_cache(maxsize=None)
def offdiagonal_positions(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(n) if i != j)


def sl_dim(n: int) -> int:
    return n * n - 1


def to_coords(x) -> List:
    """Canonical coordinates of a traceless N x N matrix."""
    n = len(x)
    if any(len(row) != n for row in x):
        raise DimensionError("expected a square matrix")
    if trace(x) != 0:
        raise EffectiveLeviError("matrix is not traceless")
    out = [x[i][j] for i, j in offdiagonal_positions(n)]
    c = 0
    for i in range(n - 1):
        c += x[i][i]
        out.append(normalize(c))
    return out


def from_coords(v, n: int):
    """Inverse of :func:`to_coords`."""
    if len(v) != sl_dim(n):
        raise DimensionError(f"expected {sl_dim(n)} coordinates")
    x = [[0] * n for _ in range(n)]
    for (i, j), c in zip(offdiagonal_positions(n), v):
        x[i][j] = c
    h = v[n * n - n:]
    prev = 0
    for i in range(n - 1):
        x[i][i] = normalize(h[i] - prev)
        prev = h[i]
    x[n - 1][n - 1] = normalize(-prev)
    return x


def sl_basis(n: int):
    """Canonical Z-basis of sl_N(Z) as matrices."""
    return [from_coords([int(k == t) for t in range(sl_dim(n))], n) for k in range(sl_dim(n))]


def elementary(n: int, i: int, j: int):
    """The matrix unit ``E_ij`` (0-based indices)."""
    x = [[0] * n for _ in range(n)]
    x[i][j] = 1
    return x


def bracket(x, y):
    """Commutator ``xy - yx``."""
    if len(x) != len(y) or (x and len(x[0]) != len(y[0])):
        raise DimensionError("bracket of matrices of different sizes")
    xy = mat_mul(x, y)
    yx = mat_mul(y, x)
    return [[normalize(a - b) for a, b in zip(r1, r2)] for r1, r2 in zip(xy, yx)]


def _as_coords(v, n: Optional[int]):
    """Accept either an N x N matrix or a coordinate vector; return coordinates."""
    if v and isinstance(v[0], (list, tuple)):
        return to_coords(v)
    if n is not None and len(v) != sl_dim(n):
        raise DimensionError(f"expected {sl_dim(n)} coordinates")
    return list(v)


def _infer_n(vectors, n: Optional[int]) -> int:
    if n is not None:
        return n
    for v in vectors:
        if v and isinstance(v[0], (list, tuple)):
            return len(v)
    raise DimensionError("cannot infer N; pass it explicitly")


# --------------------------------------------------------------------------
# Subalgebras


class LieSubalgebra:
    """A Q-subalgebra of sl_N(Q) stored by a saturated Z-basis of its integral points.

    ``LieSubalgebra(N, basis)`` accepts matrices or coordinate vectors spanning the
    subalgebra. If they already form a saturated Z-basis they are kept in order,
    otherwise the span is saturated (and LLL reduced). Closure under the bracket is
    verified when the structure constants are computed, which happens eagerly.
    """

    __slots__ = ("N", "coords", "_solver", "_alpha")

    def __init__(self, N: int, basis: Sequence = ()):
        coords = [_as_coords(v, N) for v in basis]
        coords = [v for v in integer_rows(coords) if any(v)] if coords else []
        if coords and not (len(independent_rows(coords)) == len(coords) and is_saturated(coords)):
            coords = saturate(coords)
        self._setup(N, coords)

    @classmethod
    def from_zbasis(cls, N: int, coords) -> "LieSubalgebra":
        """Wrap vectors already known to be a saturated Z-basis, keeping their order."""
        obj = cls.__new__(cls)
        obj._setup(N, [[int(x) for x in v] for v in coords])
        return obj

    @classmethod
    def full(cls, N: int) -> "LieSubalgebra":
        return cls.from_zbasis(N, identity(sl_dim(N)))

    @classmethod
    def zero(cls, N: int) -> "LieSubalgebra":
        return cls.from_zbasis(N, [])

    def _setup(self, N, coords):
        self.N = N
        self.coords = tuple(tuple(v) for v in coords)
        if any(len(v) != sl_dim(N) for v in self.coords):
            raise DimensionError("basis vectors have the wrong number of coordinates")
        self._solver = SpanSolver([list(v) for v in self.coords])
        self._alpha = self._structure_constants()

    # basic data -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def basis(self):
        """Basis as integer N x N matrices."""
        return [from_coords(list(v), self.N) for v in self.coords]

    @property
    def structure_constants(self):
        """``alpha[i][j][k]`` with ``[u_i, u_j] = sum_k alpha[i][j][k] u_k``."""
        return self._alpha

    def coordinates_of(self, x) -> Optional[List]:
        """Rational coordinates of ``x`` (matrix or sl_N coordinates) in the basis, or None."""
        return self._solver.coordinates(_as_coords(x, self.N))

    def contains(self, x) -> bool:
        return self.coordinates_of(x) is not None

    def contains_algebra(self, other: "LieSubalgebra") -> bool:
        return all(self._solver.coordinates(list(v)) is not None for v in other.coords)

    def same_space(self, other: "LieSubalgebra") -> bool:
        return self.N == other.N and self.dim == other.dim and self.contains_algebra(other)

    def vector_from_gcoords(self, c) -> List:
        """Ambient coordinates of ``sum c_k u_k``."""
        n = sl_dim(self.N)
        return [normalize(sum(ck * v[t] for ck, v in zip(c, self.coords))) for t in range(n)]

    def sub_from_gcoords(self, vectors) -> "LieSubalgebra":
        """Subalgebra spanned by vectors given in this algebra's coordinates.

        The lattice is saturated inside ``Z^dim`` first, which (because this basis is
        itself saturated) yields a saturated basis of the integral points.
        """
        vecs = [v for v in integer_rows([list(v) for v in vectors]) if any(v)] if vectors else []
        if vecs and not (len(independent_rows(vecs)) == len(vecs) and is_saturated(vecs)):
            vecs = saturate(vecs)
        amb = [self.vector_from_gcoords(c) for c in vecs]
        return LieSubalgebra.from_zbasis(self.N, amb)

    def _structure_constants(self):
        m = self.dim
        mats = self.basis
        alpha = [[[0] * m for _ in range(m)] for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                c = self._solver.integral_coordinates(to_coords(bracket(mats[i], mats[j])))
                if c is None:
                    raise NotInAlgebraError(
                        "basis is not closed under the bracket"
                        if self._solver.coordinates(to_coords(bracket(mats[i], mats[j]))) is None
                        else "basis is not saturated"
                    )
                alpha[i][j] = c
                alpha[j][i] = [-x for x in c]
        return alpha

    def ad(self, i: int):
        """Matrix of ``ad u_i`` in this basis (columns are images of basis vectors)."""
        m = self.dim
        a = self._alpha
        return [[a[i][j][k] for j in range(m)] for k in range(m)]

    def ad_of(self, c):
        """Matrix of ``ad x`` for ``x = sum c_i u_i``."""
        m = self.dim
        a = self._alpha
        return [
            [normalize(sum(c[i] * a[i][j][k] for i in range(m) if c[i])) for j in range(m)]
            for k in range(m)
        ]

    def __eq__(self, other):
        return isinstance(other, LieSubalgebra) and self.N == other.N and self.coords == other.coords

    def __hash__(self):
        return hash((self.N, self.coords))

    def __repr__(self):
        return f"LieSubalgebra(N={self.N}, dim={self.dim})"


def killing_form(g: LieSubalgebra):
    """``K[i][j] = trace(ad u_i ad u_j)`` computed on g itself."""
    m = g.dim
    a = g.structure_constants
    k = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            # (ad u_i)_{k,l} = a[i][l][k]
            s = 0
            for l in range(m):
                ail = a[i][l]
                for kk in range(m):
                    if ail[kk]:
                        s += ail[kk] * a[j][kk][l]
            k[i][j] = k[j][i] = s
    return k


def derived_algebra(g: LieSubalgebra) -> LieSubalgebra:
    a = g.structure_constants
    vecs = [a[i][j] for i in range(g.dim) for j in range(i + 1, g.dim) if any(a[i][j])]
    return g.sub_from_gcoords(vecs)


def bracket_of(g: LieSubalgebra, a: LieSubalgebra, b: LieSubalgebra) -> LieSubalgebra:
    """Saturated span of ``[a, b]`` for subspaces a, b of g (result is returned as a subalgebra)."""
    vecs = []
    ma, mb = a.basis, b.basis
    for x in ma:
        for y in mb:
            z = bracket(x, y)
            if any(any(r) for r in z):
                vecs.append(to_coords(z))
    return LieSubalgebra(g.N, vecs)


def derived_series(g: LieSubalgebra) -> List[LieSubalgebra]:
    """``g, [g,g], ...`` up to the zero algebra or to the first repeat."""
    out = [g]
    while out[-1].dim:
        nxt = derived_algebra(out[-1])
        if nxt.dim == out[-1].dim:
            break
        out.append(nxt)
    return out


def derived_length(g: LieSubalgebra) -> Optional[int]:
    """First index at which the derived series vanishes; None when g is not solvable."""
    series = derived_series(g)
    if series[-1].dim:
        return None
    return len(series) - 1


def is_solvable(g: LieSubalgebra) -> bool:
    return derived_length(g) is not None


def lower_central_series(g: LieSubalgebra) -> List[LieSubalgebra]:
    """``g, [g,g], [g,[g,g]], ...`` up to zero or the first repeat."""
    out = [g]
    while out[-1].dim:
        cur = out[-1]
        vecs = []
        for x in range(g.dim):
            for y in range(cur.dim):
                c = to_coords(bracket(g.basis[x], cur.basis[y]))
                if any(c):
                    vecs.append(c)
        nxt = LieSubalgebra(g.N, vecs)
        if nxt.dim == cur.dim:
            break
        out.append(nxt)
    return out


def is_nilpotent_algebra(g: LieSubalgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def is_ideal(sub: LieSubalgebra, g: LieSubalgebra) -> bool:
    """True when ``[g, sub] ⊆ sub`` (sub need not be given inside g)."""
    for x in g.basis:
        for y in sub.basis:
            if not sub.contains(bracket(x, y)):
                return False
    return True


def ideal_generated(g: LieSubalgebra, vectors) -> LieSubalgebra:
    """Smallest ideal of g containing the given elements (matrices or coordinates)."""
    cur = [g.coordinates_of(v) for v in vectors]
    if any(c is None for c in cur):
        raise NotInAlgebraError("generator is not in the algebra")
    cur = [v for v in integer_rows([c for c in cur if any(c)])] if any(any(c) for c in cur) else []
    span = saturate(cur, g.dim) if cur else []
    ads = [g.ad(i) for i in range(g.dim)]
    while span:
        imgs = [mat_vec(a, v) for a in ads for v in span]
        nxt = saturate(span + [w for w in imgs if any(w)], g.dim)
        if len(nxt) == len(span):
            break
        span = nxt
    return g.sub_from_gcoords(span)


def _gc(g: LieSubalgebra, v):
    return g._solver.integral_coordinates(list(v))


def radical(g: LieSubalgebra) -> LieSubalgebra:
    """Killing-orthogonal complement of ``[g, g]`` in g.

    The kernel is taken with :func:`siegel_kernel_basis` and turned into a Z-basis of
    the integral points with :func:`extract_small_basis`.
    """
    m = g.dim
    if m == 0:
        return LieSubalgebra.zero(g.N)
    d = derived_algebra(g)
    if d.dim == 0:
        return g
    kf = killing_form(g)
    dco = [_gc(g, v) for v in d.coords]
    a = [[sum(row[i] * kf[i][j] for i in range(m)) for j in range(m)] for row in dco]
    keep = independent_rows(a)
    if len(keep) == m:
        return LieSubalgebra.zero(g.N)
    if not keep:
        return g
    u = siegel_kernel_basis([a[i] for i in keep])
    v = extract_small_basis(IntegerLattice(saturate(u), m), u)
    return LieSubalgebra.from_zbasis(g.N, [g.vector_from_gcoords(c) for c in v])


def quotient_killing_nondegenerate(g: LieSubalgebra, r: LieSubalgebra) -> bool:
    """Cartan check: the Killing form of g/r is nondegenerate."""
    from .matrix import det

    if r.dim == g.dim:
        return True
    # basis of g/r: complete r's coordinates by g basis vectors
    rc = [_gc(g, v) for v in r.coords]
    comp = []
    for i in range(g.dim):
        e = [int(i == j) for j in range(g.dim)]
        if rank(rc + comp + [e]) > len(rc) + len(comp):
            comp.append(e)
    full = rc + comp
    from .matrix import inverse, transpose

    p = transpose(full)  # columns = new basis in g coordinates
    pinv = inverse(p)
    q = len(comp)
    off = len(rc)
    # ad of complement elements on g/r, in the new basis, projected to the complement block
    ads = []
    for c in comp:
        adx = mat_mul(pinv, mat_mul(g.ad_of(c), p))
        ads.append([row[off:] for row in adx[off:]])
    km = [[trace(mat_mul(ads[i], ads[j])) for j in range(q)] for i in range(q)]
    return det(km) != 0


def normalizer_in_slN(vectors, N: Optional[int] = None) -> LieSubalgebra:
    """``{x in sl_N : [x, W] ⊆ W}`` for the span W of the given vectors."""
    n = _infer_n(vectors, N)
    w = [_as_coords(v, n) for v in vectors]
    w = [v for v in integer_rows(w) if any(v)] if w else []
    if not w:
        return LieSubalgebra.full(n)
    ann = kernel_saturated_basis(w, sl_dim(n), reduce=False)
    if not ann:
        return LieSubalgebra.full(n)
    basis = sl_basis(n)
    wm = [from_coords(v, n) for v in w]
    rows = []
    for a in ann:
        for y in wm:
            rows.append([sum(ai * ci for ai, ci in zip(a, to_coords(bracket(e, y)))) for e in basis])
    keep = independent_rows(rows)
    if not keep:
        return LieSubalgebra.full(n)
    ker = kernel_saturated_basis([rows[i] for i in keep], sl_dim(n))
    return LieSubalgebra.from_zbasis(n, ker)


# --------------------------------------------------------------------------
# Heights of subspaces


@dataclass(frozen=True)
class SubspaceHeight:
    """Height of a rational subspace: the sup-norm of its primitive Plucker vector.

    ``witness`` lists the maximal minors in lexicographic order of column sets.
    """

    value: int
    witness: Tuple[int, ...]


def plucker_coordinates(rows) -> List[int]:
    """Maximal minors of an integer d x n matrix, columns subsets in lexicographic order."""
    from itertools import combinations

    d = len(rows)
    n = len(rows[0])
    minors = {0: 1}
    for k in range(d):
        row = rows[k]
        nxt = {}
        for mask, val in minors.items():
            if not val:
                continue
            below = 0
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    below += 1
                    continue
                if row[j]:
                    sign = -1 if (k + below) % 2 else 1  # (k - pos) parity, pos = k - below
                    key = mask | bit
                    nxt[key] = nxt.get(key, 0) + sign * row[j] * val
        minors = nxt
    out = []
    for cols in combinations(range(n), d):
        mask = 0
        for c in cols:
            mask |= 1 << c
        out.append(minors.get(mask, 0))
    return out


def height_subspace(vectors, N: Optional[int] = None) -> SubspaceHeight:
    """Height of the Q-span of the given elements of sl_N (matrices or coordinates)."""
    if not vectors:
        raise DimensionError("the zero subspace has no height")
    first = vectors[0]
    if first and isinstance(first[0], (list, tuple)):
        _infer_n(vectors, N)  # validates the shapes
        coords = [to_coords(v) for v in vectors]
    else:
        coords = [list(v) for v in vectors]
    ints = [v for v in integer_rows(coords) if any(v)]
    if not ints:
        raise DimensionError("the zero subspace has no height")
    basis = saturate(ints, reduce=False)
    return _height_of_basis(basis)


def _height_of_basis(basis) -> SubspaceHeight:
    pl = plucker_coordinates(basis)
    g = 0
    for x in pl:
        g = gcd(g, x)
    pl = primitive([x // g for x in pl])
    return SubspaceHeight(max(abs(x) for x in pl), tuple(pl))


def height(g: LieSubalgebra) -> int:
    """``ht(g)``; the zero algebra has height 1 by convention."""
    if g.dim == 0:
        return 1
    return _height_of_basis([list(v) for v in g.coords]).value


# --------------------------------------------------------------------------
# Characteristic polynomial and semisimplicity


def charpoly(a) -> List[Fraction]:
    """Coefficients ``c[0..n]`` of ``det(t I - a)`` (``c[n] = 1``) by Faddeev-LeVerrier."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionError("characteristic polynomial of a non-square matrix")
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = mat_mul(a, m) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        m = [[am[i][j] + (c[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        c[n - k] = -Fraction(trace(mat_mul(a, m))) / k
    return c


def eigenvalue_product(w) -> Fraction:
    """Product of the nonzero eigenvalues of ``w`` (with multiplicity); 0 iff w is nilpotent."""
    c = charpoly(w)
    n = len(w)
    for k in range(n):
        if c[k]:
            return normalize((-1) ** (n - k) * c[k])
    return 0


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = [Fraction(x) for x in _poly_trim(a)]
    b = [Fraction(x) for x in _poly_trim(b)]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = f
        for i, x in enumerate(b):
            a[s + i] -= f * x
        a = _poly_trim(a)
    return q, a


def _poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a


def is_semisimple_matrix(x) -> bool:
    """True when x is diagonalizable over the algebraic closure (squarefree part kills x)."""
    c = charpoly(x)
    deriv = [k * c[k] for k in range(1, len(c))]
    g = _poly_gcd(c, deriv)
    q, _ = _poly_divmod(c, g)
    n = len(x)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for coef in reversed(_poly_trim(q)):
        acc = mat_mul(acc, x)
        for i in range(n):
            acc[i][i] += coef
    return all(v == 0 for row in acc for v in row)


def center(g: LieSubalgebra) -> LieSubalgebra:
    """``{x in g : [x, g] = 0}``."""
    m = g.dim
    if m == 0:
        return g
    rows = []
    for j in range(m):
        # [x, u_j] = sum_i x_i alpha[i][j]
        for k in range(m):
            rows.append([g.structure_constants[i][j][k] for i in range(m)])
    keep = independent_rows(rows)
    if not keep:
        return g
    ker = kernel_saturated_basis([rows[i] for i in keep], m)
    return g.sub_from_gcoords(ker)


def is_reductive(g: LieSubalgebra) -> bool:
    """Radical equals the center and the center consists of semisimple matrices."""
    r = radical(g)
    z = center(g)
    if not r.same_space(z):
        return False
    return all(is_semisimple_matrix(x) for x in z.basis)

