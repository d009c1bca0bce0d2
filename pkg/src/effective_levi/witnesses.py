"""Witness documents: builders for every result type and independent re-checks.

A verifier never trusts the stored numbers. It checks the algebraic
identities directly (``A y = d b``, ``h gamma = h'``, ``c_S(g w) = 1/ht`` and so
on) and re-runs the certified computation where minimality is claimed.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd
from typing import Callable, Dict, List, Optional

from .heights import (
    HeightResult,
    InjectivityRadius,
    SElement,
    SiegelReduction,
    c_S,
    ht_adjoint,
    ht_bounds_from_profile,
    ht_S,
    injectivity_radius_lower,
    INF,
    adjoint_matrix,
)
from .levi import FlagStandardization, LeviDecomposition, _flag_chain, is_standard, levi_failures
from .lie import (
    LieSubalgebra,
    derived_length,
    height,
    height_subspace,
    is_ideal,
    is_solvable,
    radical,
)
from .linalg import IntegerLattice, SpanSolver, elementary_divisors, is_saturated
from .matrix import det, identity, mat_mul, mat_vec, rank, sup_norm
from .serialize import (
    algebra_from_json,
    algebra_to_json,
    document,
    intmat,
    optional_algebra_from_json,
    q,
    qmat,
    qvec,
    read_int_matrix,
    read_matrix,
    read_q,
    selement_from_json,
    selement_to_json,
)
from .siegel import InhomogeneousSolution, siegel_bound_squared
from .unipotent import NilpotentAlgebra, UnipotentReduction, log_unipotent

# --------------------------------------------------------------------------
# Builders


def radical_witness(g: LieSubalgebra, r: LieSubalgebra) -> Dict:
    return document(
        "radical",
        g=algebra_to_json(g),
        r=algebra_to_json(r),
        dim_g=g.dim,
        dim_r=r.dim,
        derived_length_r=derived_length(r),
    )


_BIG_LEVEL_KEYS = ("d", "achieved", "input_size", "kernel_sup")


def levi_witness(d: LeviDecomposition) -> Dict:
    return document(
        "levi-decomposition",
        g=algebra_to_json(d.g),
        h=algebra_to_json(d.h),
        r=algebra_to_json(d.r),
        l=algebra_to_json(d.l) if d.l is not None else None,
        dim_h=d.h.dim,
        dim_r=d.r.dim,
        T=q(d.T),
        ht_h=q(d.ht_h),
        ht_r=q(d.ht_r),
        depth=d.depth,
        derived_length_r=derived_length(d.r),
        levels=[{k: (q(v) if k in _BIG_LEVEL_KEYS else v) for k, v in lv.items()} for lv in d.levels],
    )


def standardization_witness(g, h, r, st: FlagStandardization) -> Dict:
    return document(
        "flag-standardization",
        g=algebra_to_json(g),
        h=algebra_to_json(h),
        r=algebra_to_json(r),
        delta=intmat(st.delta),
        delta_size=q(st.delta_size),
        block_sizes=list(st.block_sizes),
        flag=[intmat(v) for v in st.flag],
    )


def height_witness(g: SElement, res: HeightResult, kind: str = "height", L=None) -> Dict:
    doc = document(
        kind,
        element=selement_to_json(g),
        ht=q(res.value),
        witness=list(res.witness),
        minimum=q(res.minimum),
    )
    if kind == "height-adjoint":
        doc["L"] = algebra_to_json(L) if L is not None else None
    return doc


def subspace_height_witness(vectors, N: Optional[int], res) -> Dict:
    return document(
        "subspace-height",
        N=N,
        vectors=[qmat(v) if v and isinstance(v[0], (list, tuple)) else qvec(v) for v in vectors],
        ht=q(res.value),
        plucker=[q(x) for x in res.witness],
    )


def siegel_reduction_witness(g, red: SiegelReduction, delta, ht: Optional[HeightResult] = None) -> Dict:
    b = ht_bounds_from_profile(red)
    doc = document(
        "siegel-reduction",
        g=qmat(g),
        delta=q(delta),
        gamma=intmat(red.gamma),
        squared_lengths=qvec(red.profile.squared_lengths),
        mu=qmat(red.profile.mu),
        a_sup_squared=q(red.a_sup_squared),
        max_a_squared=q(red.max_a_squared),
        bounds={
            "lower": repr(b.lower),
            "upper": repr(b.upper),
            "lower_exact": q(b.lower_exact) if b.lower_exact is not None else None,
            "upper_exact": q(b.upper_exact) if b.upper_exact is not None else None,
            "const_lower_sq": q(b.const_lower_sq),
            "const_upper_sq": q(b.const_upper_sq),
        },
    )
    if ht is not None:
        doc["ht"] = q(ht.value)
        doc["ht_witness"] = list(ht.witness)
        doc["certified"] = b.certifies(ht.value)
    return doc


def injectivity_witness(g, inj: InjectivityRadius, eta0, delta) -> Dict:
    return document(
        "injectivity-radius",
        g=qmat(g),
        eta0=q(eta0),
        delta=q(delta),
        c_N=q(inj.c_N),
        a_sup_squared=q(inj.a_sup_squared),
        eta=q(inj.eta),
        eta_squared=q(inj.eta_squared),
    )


def siegel_kernel_witness(a, basis) -> Dict:
    return document(
        "siegel-kernel",
        A=intmat(a),
        basis=intmat(basis),
        bound_squared=q(siegel_bound_squared(a)),
    )


def siegel_solution_witness(a, b, sol: InhomogeneousSolution) -> Dict:
    return document(
        "siegel-solution",
        A=intmat(a),
        b=[int(t) for t in b],
        y=list(sol.y),
        d=sol.d,
        x=qvec(sol.x),
        achieved=sol.achieved,
        input_size=sol.input_size,
        minimal=sol.minimal,
    )


def infeasible_witness(a, b, certificate) -> Dict:
    return document("infeasible", A=intmat(a), b=[int(t) for t in b], certificate=list(certificate))


def small_basis_witness(vz: Optional[IntegerLattice], ambient: int, u, v) -> Dict:
    return document(
        "small-basis",
        ambient_dim=ambient,
        VZ=intmat(vz.vectors()) if vz is not None else None,
        u=intmat(u),
        v=intmat(v),
    )


def unipotent_witness(h, r: LieSubalgebra, red: UnipotentReduction) -> Dict:
    return document(
        "unipotent-reduction",
        h=qmat(h),
        r=algebra_to_json(r),
        gamma=intmat(red.gamma),
        h_prime=qmat(red.h_prime),
        h_prime_size=q(red.h_prime_size),
        coordinates=qvec(red.coordinates),
        steps=red.steps,
    )


# --------------------------------------------------------------------------
# Verifiers


def _verify_radical(doc) -> List[str]:
    g = algebra_from_json(doc["g"])
    r = algebra_from_json(doc["r"])
    out = []
    if not g.contains_algebra(r) or not is_ideal(r, g):
        out.append("r is not an ideal of g")
    if not is_solvable(r):
        out.append("r is not solvable")
    if not r.same_space(radical(g)):
        out.append("r is not the radical of g")
    if doc.get("dim_r") != r.dim:
        out.append("dim_r does not match")
    return out


def _verify_levi(doc) -> List[str]:
    g = algebra_from_json(doc["g"])
    h = algebra_from_json(doc["h"])
    r = algebra_from_json(doc["r"])
    l = optional_algebra_from_json(doc, "l", g.N)
    out = levi_failures(g, h, r, l)
    dl = derived_length(r) or 0
    if int(doc["depth"]) > dl:
        out.append("recursion depth exceeds the derived length of r")
    for key, val in (("T", height(g)), ("ht_h", height(h)), ("ht_r", height(r))):
        if read_q(doc[key]) != val:
            out.append(f"{key} does not match the recomputed height")
    return out


def _verify_standardization(doc) -> List[str]:
    h = algebra_from_json(doc["h"])
    r = algebra_from_json(doc["r"])
    delta = read_int_matrix(doc["delta"])
    flag = [read_int_matrix(v) if v else [] for v in doc["flag"]]
    st = FlagStandardization(delta, flag, [], list(doc["block_sizes"]))
    out = []
    if det(delta) != 1:
        out.append("delta is not in SL_N(Z)")
    if r.dim:
        chain = _flag_chain(r)[:-1]
        if chain != flag:
            out.append("flag differs from the recomputed flag of r")
    if sum(st.block_sizes) != len(delta):
        out.append("block sizes do not add up to N")
    elif not is_standard(st, h, r):
        out.append("conjugated algebras are not in standard block form")
    return out


def _primitive_check(w) -> List[str]:
    if not any(w):
        return ["witness is zero"]
    g = 0
    for x in w:
        g = gcd(g, int(x))
    return [] if g == 1 else ["witness is not primitive"]


def _verify_height(doc) -> List[str]:
    g = selement_from_json(doc["element"])
    w = [int(x) for x in doc["witness"]]
    out = _primitive_check(w)
    minimum = read_q(doc["minimum"])
    if read_q(doc["ht"]) * minimum != 1:
        out.append("ht is not the inverse of the minimum")
    if not out:
        images = {p: mat_vec([list(r) for r in comp], w) for p, comp in zip(g.places, g.components)}
        if c_S(images, g.places) != minimum:
            out.append("c_S(g w) differs from the stated minimum")
        if ht_S(g).value != read_q(doc["ht"]):
            out.append("re-enumeration found a different height")
    return out


def _verify_height_adjoint(doc) -> List[str]:
    g = selement_from_json(doc["element"])
    L = optional_algebra_from_json(doc, "L", g.N) or LieSubalgebra.full(g.N)
    w = [int(x) for x in doc["witness"]]
    out = _primitive_check(w)
    minimum = read_q(doc["minimum"])
    if read_q(doc["ht"]) * minimum != 1:
        out.append("ht is not the inverse of the minimum")
    if not out:
        images = {
            p: mat_vec(adjoint_matrix([list(r) for r in comp], L.coords, g.N), w)
            for p, comp in zip(g.places, g.components)
        }
        if c_S(images, g.places) != minimum:
            out.append("c_S(Ad(g) w) differs from the stated minimum")
        if ht_adjoint(g, L).value != read_q(doc["ht"]):
            out.append("re-enumeration found a different adjoint height")
    return out


def _verify_subspace_height(doc) -> List[str]:
    vecs = [read_matrix(v) if v and isinstance(v[0], list) else [read_q(x) for x in v] for v in doc["vectors"]]
    res = height_subspace(vecs, doc.get("N"))
    out = []
    if read_q(doc["ht"]) != res.value:
        out.append("height does not match the primitive Plucker vector")
    if [read_q(x) for x in doc["plucker"]] != list(res.witness):
        out.append("Plucker coordinates do not match")
    return out


def _verify_siegel_reduction(doc) -> List[str]:
    from .linalg import GramProfile

    g = read_matrix(doc["g"])
    gamma = read_int_matrix(doc["gamma"])
    prof = GramProfile(
        tuple(read_q(x) for x in doc["squared_lengths"]),
        tuple(tuple(read_q(x) for x in row) for row in doc["mu"]),
    )
    red = SiegelReduction(tuple(tuple(r) for r in gamma), prof, read_q(doc["a_sup_squared"]),
                          read_q(doc["max_a_squared"]))
    out = []
    if not red.verify(g):
        out.append("g gamma does not have the stated Siegel profile")
    s = prof.squared_lengths
    if red.max_a_squared != max(s):
        out.append("max_a_squared is not max a_i^2")
    if red.a_sup_squared != max(max(s), max(1 / x for x in s)):
        out.append("a_sup_squared is not max(a_i^2, a_i^-2)")
    if "ht" in doc:
        b = ht_bounds_from_profile(red)
        ht = ht_S(SElement([INF], [g]))
        if ht.value != read_q(doc["ht"]):
            out.append("ht does not match")
        if bool(doc.get("certified")) != b.certifies(ht.value):
            out.append("certification flag does not match")
    return out


def _verify_injectivity(doc) -> List[str]:
    g = read_matrix(doc["g"])
    inj = injectivity_radius_lower(g, read_q(doc["eta0"]), read_q(doc["delta"]))
    out = []
    for key in ("c_N", "a_sup_squared", "eta", "eta_squared"):
        if read_q(doc[key]) != getattr(inj, key):
            out.append(f"{key} does not match")
    return out


def _verify_siegel_kernel(doc) -> List[str]:
    a = read_int_matrix(doc["A"])
    basis = read_int_matrix(doc["basis"]) if doc["basis"] else []
    n = len(a[0])
    out = []
    bound = siegel_bound_squared(a)
    if read_q(doc["bound_squared"]) != bound:
        out.append("bound_squared is not det(A A^T)")
    if any(any(mat_vec(a, v)) for v in basis):
        out.append("a basis vector is not in the kernel")
    if any(x * x > bound for v in basis for x in v):
        out.append("an entry exceeds the Siegel bound")
    if len(basis) != n - rank(a) or (basis and rank(basis) != len(basis)):
        out.append("basis does not have the kernel dimension")
    elif basis and not is_saturated(basis, n):
        out.append("basis does not span the integral kernel")
    return out


def _verify_siegel_solution(doc) -> List[str]:
    a = read_int_matrix(doc["A"])
    b = [int(t) for t in doc["b"]]
    y = [int(t) for t in doc["y"]]
    d = int(doc["d"])
    out = []
    if d <= 0:
        out.append("denominator is not positive")
    if any(sum(c * x for c, x in zip(row, y)) != d * t for row, t in zip(a, b)):
        out.append("A y != d b")
    if int(doc["achieved"]) != max([abs(t) for t in y] + [abs(d)]):
        out.append("achieved size does not match")
    if [read_q(x) for x in doc["x"]] != [Fraction(t, d) for t in y]:
        out.append("x != y / d")
    return out


def _verify_infeasible(doc) -> List[str]:
    a = read_int_matrix(doc["A"])
    b = [int(t) for t in doc["b"]]
    z = [int(t) for t in doc["certificate"]]
    out = []
    n = len(a[0]) if a else 0
    if any(sum(zi * a[i][j] for i, zi in enumerate(z)) for j in range(n)):
        out.append("certificate does not annihilate A")
    if sum(zi * bi for zi, bi in zip(z, b)) == 0:
        out.append("certificate does not separate b")
    return out


def _verify_small_basis(doc) -> List[str]:
    n = int(doc["ambient_dim"])
    u = read_int_matrix(doc["u"])
    v = read_int_matrix(doc["v"])
    vz = read_int_matrix(doc["VZ"]) if doc.get("VZ") is not None else identity(n)
    out = []
    if len(u) != len(v) or len(v) != len(vz):
        return ["u, v and VZ have different ranks"]
    solver = SpanSolver(vz)
    coords = [solver.integral_coordinates(x) for x in v]
    if any(c is None for c in coords):
        return ["v is not contained in VZ"]
    if abs(det(coords)) != 1:
        out.append("v is not a Z-basis of VZ")
    running = 0
    for i in range(len(v)):
        running += sup_norm(u[i])
        if sup_norm(v[i]) > running:
            out.append(f"norm bound fails at position {i}")
        prefix = coords[: i + 1]
        if any(x != 1 for x in elementary_divisors(prefix)) or len(elementary_divisors(prefix)) != i + 1:
            out.append(f"prefix {i + 1} is not saturated")
        if rank(v[: i + 1] + u[: i + 1]) != i + 1:
            out.append(f"prefix {i + 1} spans a different space than u")
    return out


def _verify_unipotent(doc) -> List[str]:
    h = read_matrix(doc["h"])
    r = algebra_from_json(doc["r"])
    gamma = read_int_matrix(doc["gamma"])
    hp = read_matrix(doc["h_prime"])
    nil = NilpotentAlgebra(r)
    out = []
    if mat_mul(h, gamma) != hp:
        out.append("h gamma != h'")
    if det(gamma) != 1:
        out.append("gamma is not in SL_N(Z)")
    if nil.coordinates(log_unipotent(gamma)) is None:
        out.append("gamma is not in exp(r)")
    c = nil.coordinates(log_unipotent(hp))
    if c is None or c != [read_q(x) for x in doc["coordinates"]]:
        out.append("Mal'cev coordinates of log h' do not match")
    else:
        half = Fraction(factorial(len(h)), 2)
        if any(not (-half <= t < half) for t in c):
            out.append("coordinates outside [-N!/2, N!/2)")
    if read_q(doc["h_prime_size"]) != sup_norm(hp):
        out.append("h_prime_size does not match")
    return out


def _verify_bench(doc) -> List[str]:
    from .bench import verify_report

    return verify_report(doc)


VERIFIERS: Dict[str, Callable[[Dict], List[str]]] = {
    "radical": _verify_radical,
    "levi-decomposition": _verify_levi,
    "flag-standardization": _verify_standardization,
    "height": _verify_height,
    "height-adjoint": _verify_height_adjoint,
    "subspace-height": _verify_subspace_height,
    "siegel-reduction": _verify_siegel_reduction,
    "injectivity-radius": _verify_injectivity,
    "siegel-kernel": _verify_siegel_kernel,
    "siegel-solution": _verify_siegel_solution,
    "infeasible": _verify_infeasible,
    "small-basis": _verify_small_basis,
    "unipotent-reduction": _verify_unipotent,
    "bench-report": _verify_bench,
}
