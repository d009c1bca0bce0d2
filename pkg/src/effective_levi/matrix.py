"""Dense exact matrices as nested lists.

Entries are ``int`` or :class:`fractions.Fraction`. Nothing here ever touches a
float. Matrices are lists of rows; vectors are flat lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Union

from .errors import DimensionError, EffectiveLeviError

Rational = Union[int, Fraction]
RationalMatrix = List[List[Rational]]
IntMatrix = List[List[int]]


def parse_rational(x) -> Fraction:
    """Parse an int, a Fraction or a ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise EffectiveLeviError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise EffectiveLeviError(f"not a rational: {x!r}") from exc
    raise EffectiveLeviError(f"not a rational: {x!r}")


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def normalize(x):
    """Return an int when ``x`` is integral, else the Fraction itself."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def as_matrix(rows) -> RationalMatrix:
    """Copy ``rows`` into a rectangular matrix with exact entries."""
    out = [[normalize(parse_rational(x)) for x in row] for row in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("ragged matrix")
    return out


def shape(a) -> tuple:
    return (len(a), len(a[0]) if a else 0)


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> IntMatrix:
    return [[0] * n for _ in range(m)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    if a and b and len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = list(zip(*b))
    return [[normalize(sum(x * y for x, y in zip(row, col))) for col in bt] for row in a]


def mat_vec(a, v):
    return [normalize(sum(x * y for x, y in zip(row, v))) for row in a]


def mat_add(a, b):
    return [[normalize(x + y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[normalize(x - y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[normalize(c * x) for x in row] for row in a]


def mat_pow(a, k: int):
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def is_zero(a) -> bool:
    return all(x == 0 for row in a for x in row)


def is_integral(a) -> bool:
    return all(Fraction(x).denominator == 1 for row in a for x in row)


def trace(a):
    return normalize(sum(a[i][i] for i in range(len(a))))


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def sup_norm(v):
    """Archimedean max norm of a vector or matrix."""
    if v and isinstance(v[0], (list, tuple)):
        return max((abs(x) for row in v for x in row), default=0)
    return max((abs(x) for x in v), default=0)


def vec_content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v) -> List[int]:
    """Divide an integer vector by its content and make the first nonzero entry positive."""
    g = vec_content(v)
    if g == 0:
        return [0] * len(v)
    out = [int(x) // g for x in v]
    for x in out:
        if x:
            if x < 0:
                out = [-y for y in out]
            break
    return out


def common_denominator(a) -> int:
    d = 1
    for row in a:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def scale_to_integer(a):
    """Return ``(A, d)`` with ``A`` an integer matrix and ``a = A / d``."""
    d = common_denominator(a)
    return [[int(x * d) for x in row] for row in a], d


def integer_rows(a) -> IntMatrix:
    """Scale each row of a rational matrix to a primitive integer row."""
    out = []
    for row in a:
        d = 1
        for x in row:
            d = lcm(d, Fraction(x).denominator)
        out.append(primitive([int(x * d) for x in row]) if any(row) else [0] * len(row))
    return out


def det_bareiss(a) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a_ik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - a_ik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def det(a):
    """Exact determinant of a square rational matrix."""
    if len(a) == 0:
        return 1
    if len(a) != len(a[0]):
        raise DimensionError("determinant of a non-square matrix")
    ai, d = scale_to_integer(a)
    return normalize(Fraction(det_bareiss(ai), d ** len(a)))


def rref(a):
    """Reduced row echelon form over Q. Returns ``(R, pivot_columns)``."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a) -> int:
    if not a or not a[0]:
        return 0
    return len(independent_rows(a))


def independent_rows(a) -> List[int]:
    """Indices of a maximal set of linearly independent rows, chosen greedily in order."""
    chosen = []
    echelon = []  # list of (pivot, row) with integer entries
    for idx, row in enumerate(a):
        v = integer_rows([row])[0]
        for piv, e in echelon:
            if v[piv]:
                f, g = e[piv], v[piv]
                v = [f * x - g * y for x, y in zip(v, e)]
                v = primitive(v) if any(v) else v
        nz = next((j for j, x in enumerate(v) if x), None)
        if nz is not None:
            echelon.append((nz, v))
            chosen.append(idx)
    return chosen


def inverse(a) -> RationalMatrix:
    n = len(a)
    if n == 0:
        return []
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    r, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise EffectiveLeviError("matrix is singular")
    return [[normalize(x) for x in row[n:]] for row in r]


def nullspace(a) -> List[List[Fraction]]:
    """Rational basis of ``{x : a x = 0}`` read off the reduced echelon form."""
    cols = len(a[0]) if a else 0
    if not a:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    r, piv = rref(a)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -r[i][f]
        basis.append(v)
    return basis
