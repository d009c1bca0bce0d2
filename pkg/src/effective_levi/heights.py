"""Heights of group elements, Siegel reduction and the injectivity-radius bound.

Places are written ``"inf"`` for the real place and as prime integers otherwise.
The p-adic norm is normalized so that ``|p|_p = 1/p`` and vectors carry the max
norm at every place.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple, Union

from .errors import DimensionError, EffectiveLeviError
from .lie import LieSubalgebra, from_coords, to_coords
from .linalg import (
    DEFAULT_BUDGET,
    Enumerator,
    GramProfile,
    IntegerLattice,
    elementary_divisors,
    hermite_normal_form,
    kernel_saturated_basis,
    lll_reduce_vectors,
    shortest_vector_sup,
)
from .matrix import (
    as_matrix,
    det,
    identity,
    inverse,
    mat_mul,
    normalize,
    primitive,
    scale_to_integer,
    transpose,
)

INF = "inf"
Place = Union[str, int]


# --------------------------------------------------------------------------
# Places and norms


def parse_place(p) -> Place:
    if isinstance(p, str):
        s = p.strip().lower()
        if s in ("inf", "infinity", "oo", "∞"):
            return INF
        try:
            p = int(s)
        except ValueError as exc:
            raise EffectiveLeviError(f"unknown place {p!r}") from exc
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise EffectiveLeviError(f"place {p!r} is neither 'inf' nor a prime")
    return p


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of a nonzero integer (trial division)."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def canonical_places(places) -> Tuple[Place, ...]:
    parsed = [parse_place(p) for p in places]
    primes = sorted({p for p in parsed if p != INF})
    if len(primes) != len([p for p in parsed if p != INF]):
        raise EffectiveLeviError("repeated place")
    return (INF,) + tuple(primes)


def valuation(x, p: int) -> Optional[int]:
    """p-adic valuation of a rational; None for zero."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def place_norm(v, place: Place) -> Fraction:
    """Max norm of a vector (or matrix) at a place."""
    flat = [x for row in v for x in row] if v and isinstance(v[0], (list, tuple)) else list(v)
    if place == INF:
        return Fraction(max((abs(Fraction(x)) for x in flat), default=0))
    vals = [valuation(x, place) for x in flat]
    vals = [t for t in vals if t is not None]
    if not vals:
        return Fraction(0)
    return Fraction(place) ** (-min(vals))


def c_S(w, places) -> Fraction:
    """Product over the places of the max norm of ``w``.

    ``w`` is either one rational vector (used at every place) or a mapping from
    place to vector.
    """
    places = canonical_places(places)
    out = Fraction(1)
    for p in places:
        vec = w[p] if isinstance(w, dict) else w
        n = place_norm(vec, p)
        if n == 0:
            raise EffectiveLeviError("c_S of a vector that vanishes at some place")
        out *= n
    return out


# --------------------------------------------------------------------------
# S-elements


@dataclass(frozen=True)
class SElement:
    """Element of SL_N(Q_S) with rational components; ``places[0]`` is always ``"inf"``."""

    places: Tuple[Place, ...]
    components: Tuple[Tuple[Tuple, ...], ...]

    def __init__(self, places, components):
        if len(places) != len(components):
            raise DimensionError("one component per place is required")
        pairs = {}
        for p, comp in zip(places, components):
            pp = parse_place(p)
            if pp in pairs:
                raise EffectiveLeviError("repeated place")
            pairs[pp] = as_matrix(comp)
        if INF not in pairs:
            raise EffectiveLeviError("the real place must be present")
        order = canonical_places(list(pairs))
        n = len(pairs[INF])
        for p in order:
            m = pairs[p]
            if len(m) != n or any(len(r) != n for r in m):
                raise DimensionError("components must be square of a common size")
            if det(m) != 1:
                raise EffectiveLeviError(f"component at place {p} does not have determinant 1")
        object.__setattr__(self, "places", order)
        object.__setattr__(
            self, "components", tuple(tuple(tuple(r) for r in pairs[p]) for p in order)
        )

    @classmethod
    def rational(cls, g, places=None) -> "SElement":
        """Diagonal embedding of a rational matrix; by default S is the real place plus
        the primes dividing a denominator of g."""
        g = as_matrix(g)
        if places is None:
            primes = set()
            for row in g:
                for x in row:
                    primes.update(prime_factors(Fraction(x).denominator))
            places = [INF] + sorted(primes)
        places = canonical_places(places)
        return cls(places, [g] * len(places))

    @property
    def N(self) -> int:
        return len(self.components[0])

    def component(self, place) -> List[List]:
        return [list(r) for r in self.components[self.places.index(parse_place(place))]]


def _padic_floor(a_int, p: int) -> int:
    """Largest e with ``p^e`` dividing every elementary divisor of a full-column-rank matrix."""
    divs = elementary_divisors(a_int)
    k = len(a_int[0])
    if len(divs) < k:
        raise EffectiveLeviError("component is singular on the lattice")
    return max(valuation(d, p) for d in divs)


@dataclass(frozen=True)
class HeightResult:
    """``value = 1 / min c_S(g w)`` with ``witness`` a primitive minimizer."""

    value: Fraction
    witness: Tuple[int, ...]
    minimum: Fraction


def _min_cS(place_mats: Dict[Place, list], k: int, budget: int) -> Tuple[Fraction, List[int]]:
    """Minimize ``prod_v ||G_v w||_v`` over nonzero ``w in Z^k`` exactly.

    For primitive w the p-adic factor is at least ``p^(v_p(den) - e_p)`` where
    ``e_p`` is the largest valuation of an elementary divisor of the integer
    numerator of ``G_p``. Non-primitive w never do better than their primitive
    part, so every candidate improving the current best has
    ``||G_inf w||_inf <= best / prod(lower bounds)``, which bounds the enumeration.
    """
    g_inf = place_mats[INF]
    cols = transpose(g_inf)  # images of the standard basis
    images, den = scale_to_integer(cols)
    n_inf = len(g_inf)
    a_inf, m_inf = scale_to_integer(g_inf)
    lower = Fraction(1)
    padic = []
    for p, gp in place_mats.items():
        if p == INF:
            continue
        a_int, m = scale_to_integer(gp)
        e = _padic_floor(a_int, p)
        lower *= Fraction(p) ** (valuation(m, p) - e)
        padic.append((p, a_int, Fraction(p) ** valuation(m, p)))

    def cost(w):
        # integer arithmetic: ||A w / m||_v = ||A w||_v / |m|_v
        c = Fraction(max(abs(sum(a * x for a, x in zip(row, w))) for row in a_inf), m_inf)
        for p, a_int, scale in padic:
            content = 0
            for row in a_int:
                content = gcd(content, sum(a * x for a, x in zip(row, w)))
            v = 0
            while content % p == 0:
                content //= p
                v += 1
            c *= scale / p ** v
        return c

    enum = Enumerator(images, budget)
    best = {"c": None, "w": None}

    def consider(coeff, vec):
        if not any(coeff):
            return None
        c = cost(coeff)
        key = primitive(coeff)
        if best["c"] is None or c < best["c"] or (c == best["c"] and key < best["w"]):
            best["c"], best["w"] = c, key
            s = best["c"] / lower * den
            return Fraction(n_inf) * s * s
        return None

    for coeff in enum.coeffs:
        consider(coeff, None)
    s = best["c"] / lower * den
    enum.run(Fraction(n_inf) * s * s, consider)
    return best["c"], best["w"]


def _min_cS_by_clearing(place_mats: Dict[Place, list], k: int, budget: int) -> Tuple[Fraction, List[int]]:
    """Same minimum as ``_min_cS`` through a single real lattice.

    By the product formula we may rescale w by S-units until every ``G_p w`` is a
    primitive p-adic vector. Those w form ``(1/P) L'`` with
    ``L' = {w in Z^k : A_p w = 0 mod p^(k_p + v_p(m_p))}`` (``G_p = A_p / m_p``,
    ``P = prod p^k_p``), and on that set ``c_S(G w) = ||G_inf w||_inf``.
    """
    g_inf = place_mats[INF]
    blocks = []
    P = 1
    for p, gp in place_mats.items():
        if p == INF:
            continue
        a_int, m = scale_to_integer(gp)
        kp = max(0, _padic_floor(a_int, p) - valuation(m, p))
        P *= p ** kp
        blocks.append((a_int, p ** (kp + valuation(m, p))))
    if blocks:
        width = k + sum(len(a) for a, _ in blocks)
        rows = []
        offset = k
        for a_int, mod in blocks:
            for i, arow in enumerate(a_int):
                row = [0] * width
                row[:k] = arow
                row[offset + i] = -mod
                rows.append(row)
            offset += len(a_int)
        ker = kernel_saturated_basis(rows, width, reduce=False)
        hmat, _ = hermite_normal_form([v[:k] for v in ker])
        lat = [r for r in hmat if any(r)]
    else:
        lat = identity(k)
    target = [[Fraction(x) / P for x in row] for row in g_inf]
    w, value = shortest_vector_sup(IntegerLattice(lat, k), target, budget)
    return Fraction(value), primitive(w)


def _place_mats(g: SElement) -> Dict[Place, list]:
    return {p: [list(r) for r in comp] for p, comp in zip(g.places, g.components)}


def ht_S(g: SElement, budget: int = DEFAULT_BUDGET) -> HeightResult:
    """``max over nonzero w in Z_S^N of 1 / c_S(g w)`` with a primitive witness."""
    c, w = _min_cS_by_clearing(_place_mats(g), g.N, budget)
    return HeightResult(normalize(1 / c), tuple(w), c)


def ht_S_direct(g: SElement, budget: int = DEFAULT_BUDGET) -> HeightResult:
    """``ht_S`` by enumerating Z^N against the full S-adic cost.

    Independent of the clearing lattice and much slower when the p-adic lower
    bound is loose; meant as a cross-check on small inputs.
    """
    c, w = _min_cS(_place_mats(g), g.N, budget)
    return HeightResult(normalize(1 / c), tuple(w), c)


def ht_real(g, budget: int = DEFAULT_BUDGET) -> HeightResult:
    """Height of a real matrix with rational entries: only the real place is used."""
    return ht_S(SElement([INF], [g]), budget)


def adjoint_matrix(g, basis_coords, n: int):
    """Columns: canonical coordinates of ``g X g^{-1}`` for each basis element X."""
    ginv = inverse(g)
    cols = []
    for v in basis_coords:
        x = from_coords(list(v), n)
        cols.append(to_coords(mat_mul(mat_mul(g, x), ginv)))
    return transpose(cols)


def ht_adjoint(g: SElement, L: Optional[LieSubalgebra] = None, budget: int = DEFAULT_BUDGET) -> HeightResult:
    """Adjoint height over the integral points of L (default all of sl_N).

    The witness is given in the coordinates of L's saturated basis.
    """
    n = g.N
    if L is None:
        L = LieSubalgebra.full(n)
    if L.N != n:
        raise DimensionError("L lives in a different sl_N")
    if L.dim == 0:
        raise DimensionError("L is the zero algebra")
    mats = {
        p: adjoint_matrix([list(r) for r in comp], L.coords, n)
        for p, comp in zip(g.places, g.components)
    }
    c, w = _min_cS_by_clearing(mats, L.dim, budget)
    return HeightResult(normalize(1 / c), tuple(w), c)


# --------------------------------------------------------------------------
# Siegel reduction


@dataclass(frozen=True)
class SiegelReduction:
    """``g gamma = k a u`` with the Siegel conditions holding exactly.

    ``a_sup_squared`` is ``|a|^2 = max(max a_i^2, max a_i^-2)``, the square of the
    larger of the operator norms of a and its inverse. ``max_a_squared`` is the
    plain ``max a_i^2``.
    """

    gamma: Tuple[Tuple[int, ...], ...]
    profile: GramProfile
    a_sup_squared: Fraction
    max_a_squared: Fraction

    @property
    def N(self) -> int:
        return len(self.gamma)

    def reduced_columns(self, g) -> List[List]:
        return transpose(mat_mul(as_matrix(g), [list(r) for r in self.gamma]))

    def verify(self, g) -> bool:
        """Re-derive the profile from ``g gamma`` and re-check the Siegel conditions."""
        gam = [list(r) for r in self.gamma]
        if det(gam) != 1:
            return False
        prof = GramProfile.of_vectors(self.reduced_columns(g))
        return prof == self.profile and prof.is_siegel()


def siegel_reduce(g, delta=Fraction(1)) -> SiegelReduction:
    """Siegel-reduce the columns of a determinant-one rational matrix."""
    g = as_matrix(g)
    n = len(g)
    if any(len(r) != n for r in g):
        raise DimensionError("expected a square matrix")
    if det(g) != 1:
        raise EffectiveLeviError("siegel_reduce needs det g = 1")
    cols, _ = scale_to_integer(transpose(g))
    _, coeffs = lll_reduce_vectors(cols, Fraction(delta))
    gamma = transpose(coeffs)
    if det(gamma) == -1:
        for row in gamma:
            row[-1] = -row[-1]
    reduced = transpose(mat_mul(g, gamma))
    prof = GramProfile.of_vectors(reduced)
    a2 = prof.squared_lengths
    top = max(a2)
    inv = max(1 / x for x in a2)
    return SiegelReduction(
        tuple(tuple(int(x) for x in r) for r in gamma), prof, max(top, inv), top
    )


# --------------------------------------------------------------------------
# Bounds from the profile


TWO_OVER_SQRT3_UPPER = Fraction(1155, 1000)


def unipotent_conjugation_constant(n: int) -> float:
    """``1/2 (((2/sqrt3)^N - 1) / (2/sqrt3 - 1) + 1)``, the bound on ``||a u a^-1||_op``."""
    t = 2 / 3 ** 0.5
    return 0.5 * ((t ** n - 1) / (t - 1) + 1)


def unipotent_conjugation_constant_upper(n: int) -> Fraction:
    """Rational upper bound for :func:`unipotent_conjugation_constant` (2/sqrt3 <= 1.155)."""
    t = TWO_OVER_SQRT3_UPPER
    return 1 + Fraction(1, 2) * sum(t ** k for k in range(1, n))


def _inverse_conjugation_upper(n: int) -> Fraction:
    # ||m^-1|| <= sum_{k<N} ||I - m||^k for unipotent m with ||m|| <= K
    k = unipotent_conjugation_constant_upper(n)
    return sum((k - 1) ** j for j in range(n))


def exact_root(x: Fraction, k: int) -> Optional[Fraction]:
    """The rational k-th root of x >= 0 when it exists."""
    def iroot(m):
        r = int(round(m ** (1.0 / k))) if m < 2 ** 1000 else _iroot_big(m, k)
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** k == m:
                return c
        return None

    a, b = iroot(x.numerator), iroot(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _iroot_big(m: int, k: int) -> int:
    lo, hi = 0, 1 << (m.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= m:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class HeightBounds:
    """``lower = |a|^(1/(N-1))`` and ``upper = |a|`` with certified constants.

    For every g with this profile,
    ``lower / C_low <= ht(g) <= C_up * upper`` where ``C_low^2 = const_lower_sq``
    and ``C_up^2 = const_upper_sq``; both are exact rationals.
    """

    N: int
    a_sup_squared: Fraction
    lower: float
    upper: float
    lower_exact: Optional[Fraction]
    upper_exact: Optional[Fraction]
    conjugation_constant: float
    const_lower_sq: Fraction
    const_upper_sq: Fraction

    def lower_le(self, value) -> bool:
        """Exact test of ``lower <= value`` by cross-powering squares."""
        v = Fraction(value)
        if self.N == 1:
            return v >= 1
        return v >= 0 and (v * v) ** (self.N - 1) >= self.a_sup_squared

    def upper_ge(self, value) -> bool:
        v = Fraction(value)
        return v * v <= self.a_sup_squared

    def certifies(self, ht) -> bool:
        """Exact check of the certified sandwich for a computed height."""
        h2 = Fraction(ht) ** 2
        low_ok = (h2 * self.const_lower_sq) ** max(self.N - 1, 1) >= self.a_sup_squared
        up_ok = h2 <= self.const_upper_sq * self.a_sup_squared
        return low_ok and up_ok


def ht_bounds_from_profile(red: SiegelReduction, N: Optional[int] = None) -> HeightBounds:
    n = N if N is not None else red.N
    a2 = red.a_sup_squared
    e = max(2 * (n - 1), 1)
    k = unipotent_conjugation_constant_upper(n)
    kinv = _inverse_conjugation_upper(n)
    return HeightBounds(
        N=n,
        a_sup_squared=a2,
        lower=float(a2) ** (1.0 / e),
        upper=float(a2) ** 0.5,
        lower_exact=exact_root(a2, e),
        upper_exact=exact_root(a2, 2),
        conjugation_constant=unipotent_conjugation_constant(n),
        const_lower_sq=n * k * k,
        const_upper_sq=n * kinv * kinv,
    )


# --------------------------------------------------------------------------
# Injectivity radius


@dataclass(frozen=True)
class InjectivityRadius:
    """``eta = c_N / |a|^2`` with ``eta_squared = eta^2``."""

    eta: Fraction
    eta_squared: Fraction
    c_N: Fraction
    a_sup_squared: Fraction


def injectivity_constant(n: int, eta0=Fraction(1, 4)) -> Fraction:
    """``c(N) = min(eta0, 69/(100 N)) / (N C_m)``.

    ``C_m`` bounds ``||m^-1||_inf ||m||_1`` for the unipotent factor
    ``m = a u a^-1``; then every entry of a conjugated log is at most
    ``N C_m |a|^2 eta``, and ``N ||Z||_max <= 0.69 < log 2`` forces
    ``||exp Z - I||_max < 1``, so an integral conjugate must be the identity.
    """
    eta0 = Fraction(eta0)
    if eta0 <= 0:
        raise EffectiveLeviError("eta0 must be positive")
    cm = unipotent_conjugation_constant_upper(n) * _inverse_conjugation_upper(n)
    return min(eta0, Fraction(69, 100 * n)) / (n * cm)


def injectivity_radius_lower(g, eta0=Fraction(1, 4), delta=Fraction(1)) -> InjectivityRadius:
    red = siegel_reduce(g, delta)
    c = injectivity_constant(len(red.gamma), eta0)
    eta = c / red.a_sup_squared
    return InjectivityRadius(eta, eta * eta, c, red.a_sup_squared)
