"""The ten acceptance criteria at their stated sizes, tolerances and time limits.

Every test records one PASS/FAIL line (shown in the terminal summary) before it
asserts, so a failing criterion still reports what it measured.
"""

import itertools
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import factorial, gcd

import pytest
import sympy

from effective_levi.bench import bench_exponents, slope
from effective_levi.fixtures import (
    FIXTURES,
    conjugate,
    conjugate_algebra,
    fixture_names,
    random_sl_rational,
    random_subalgebra,
    random_unimodular,
)
from effective_levi.heights import (
    INF,
    SElement,
    ht_adjoint,
    ht_bounds_from_profile,
    ht_real,
    ht_S,
    ht_S_direct,
    siegel_reduce,
)
from effective_levi.lie import (
    LieSubalgebra,
    eigenvalue_product,
    elementary,
    ideal_generated,
    is_ideal,
    is_solvable,
    radical,
    to_coords,
)
from effective_levi.linalg import GramProfile, IntegerLattice, saturate
from effective_levi.matrix import mat_mul
from effective_levi.siegel import extract_small_basis, siegel_kernel_basis
from effective_levi.unipotent import NilpotentAlgebra, exp_nilpotent, log_unipotent, unipotent_reduce


@pytest.fixture
def record(acceptance_log):
    def _record(k, title, ok, detail, started, limit):
        elapsed = time.perf_counter() - started
        ok = ok and elapsed < limit
        line = f"#{k} {'PASS' if ok else 'FAIL'} {title}: {detail} [{elapsed:.1f}s of {limit:.0f}s]"
        acceptance_log.append(line)
        print(line)
        return ok

    return _record


# --- small independent oracles ---------------------------------------------------


def bareiss_det(m):
    """Fraction-free determinant of an integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def minors_gcd(rows):
    """gcd of the maximal minors; 1 exactly when the rows span a saturated lattice."""
    k, n = len(rows), len(rows[0])
    g = 0
    for cols in itertools.combinations(range(n), k):
        g = gcd(g, bareiss_det([[r[c] for c in cols] for r in rows]))
    return g


def int_rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0


def apply(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def matrix_power(w, k):
    n = len(w)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = [[sum(out[i][t] * w[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    return out


def strict_upper(n, rng, bound, den=1):
    return [[Fraction(rng.randint(-bound, bound), rng.randint(1, den)) if j > i else 0
             for j in range(n)] for i in range(n)]


# --- 1 ------------------------------------------------------------------------------


def kernel_instances(rng):
    """Every full-rank matrix for shapes with at most 7^4 members, 500 random ones otherwise."""
    for n in range(2, 6):
        for m in range(1, n):
            if m * n <= 4:
                for entries in itertools.product(range(-3, 4), repeat=m * n):
                    a = [list(entries[i * n:(i + 1) * n]) for i in range(m)]
                    if minors_gcd(a) != 0:
                        yield a
            else:
                made = 0
                while made < 500:
                    a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
                    if minors_gcd(a) != 0:
                        made += 1
                        yield a


def test_criterion_01_siegel_kernel_bound(record):
    t0 = time.perf_counter()
    rng = random.Random(101)
    count, failures = 0, []
    for a in kernel_instances(rng):
        count += 1
        m, n = len(a), len(a[0])
        bound = bareiss_det([[sum(x * y for x, y in zip(r, s)) for s in a] for r in a])
        ker = siegel_kernel_basis(a)
        ok = (
            len(ker) == n - m
            and all(not any(apply(a, v)) for v in ker)
            and all(x * x <= bound for v in ker for x in v)
            and minors_gcd(ker) == 1  # spans all of ker(A) ∩ Z^n
        )
        if not ok:
            failures.append(a)
    ok = count >= 5000 and not failures
    assert record(1, "Siegel kernel bound", ok,
                  f"{count} matrices, {len(failures)} violations", t0, 300), failures[:3]


# --- 2 ------------------------------------------------------------------------------


def test_criterion_02_extraction_bound(record):
    t0 = time.perf_counter()
    rng = random.Random(202)
    failures = []
    for trial in range(1000):
        n = rng.randint(1, 6)
        k = rng.randint(1, n)
        while True:
            gens = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
            if minors_gcd(gens) != 0:
                break
        vz = saturate(gens) if trial % 2 else gens  # saturated and non-saturated lattices
        while True:
            mix = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
            if bareiss_det(mix) != 0:
                break
        u = [[sum(c * b[j] for c, b in zip(row, vz)) for j in range(n)] for row in mix]
        v = extract_small_basis(IntegerLattice(vz, n), u)
        basis = sympy.Matrix(vz).T
        coords = []
        for x in v:
            sol, params = basis.gauss_jordan_solve(sympy.Matrix(x))
            coords.append([int(c) if c.is_integer else None for c in sol])
        ok = all(None not in c for c in coords) and abs(bareiss_det(coords)) == 1
        running = 0
        for i in range(k):
            running += max(abs(x) for x in u[i])
            ok = ok and max(abs(x) for x in v[i]) <= running
            ok = ok and minors_gcd(coords[: i + 1]) == 1
            ok = ok and int_rank(v[: i + 1] + u[: i + 1]) == i + 1
        if not ok:
            failures.append((vz, u))
    assert record(2, "extraction bound", not failures,
                  f"1000 instances, {len(failures)} violations", t0, 60), failures[:3]


# --- 3 ------------------------------------------------------------------------------


def test_criterion_03_levi_validity(record):
    t0 = time.perf_counter()
    report = bench_exponents(fixture_names(), grid=(10, 100, 1000), samples=200, rng_seed=303)
    rows = report["rows"]
    invalid = [r for r in rows if not r["valid"]]
    deep = [r for r in rows if r["valid"] and r["depth"] > r["derived_length_r"]]
    jumps = {}
    for name in fixture_names():
        s2, s3 = slope(report, name, 100), slope(report, name, 1000)
        if s2 is not None and s3 is not None:
            jumps[name] = s3 - s2
    bad_slopes = {k: v for k, v in jumps.items() if not v < 0.5}
    worst = max(jumps.values()) if jumps else float("nan")
    ok = len(rows) == 200 * 3 * len(FIXTURES) and not invalid and not deep and not bad_slopes
    detail = (f"{len(rows)} runs, {len(invalid)} invalid, {len(deep)} too deep; "
              f"slope(1e3) - slope(1e2) max {worst:.3f} over {len(jumps)} fits")
    assert record(3, "Levi validity", ok, detail, t0, 1800), (invalid[:3], deep[:3], bad_slopes)


# --- 4 ------------------------------------------------------------------------------


def radical_is_maximal_solvable_ideal(g):
    r = radical(g)
    if not (g.contains_algebra(r) and is_ideal(r, g) and is_solvable(r)):
        return False
    for x in g.basis:
        if r.contains(x):
            continue
        bigger = ideal_generated(g, [to_coords(y) for y in r.basis] + [to_coords(x)])
        if is_solvable(bigger):
            return False
    return True


def test_criterion_04_radical_oracle(record):
    t0 = time.perf_counter()
    rng = random.Random(404)
    failures = [name for name, f in FIXTURES.items() if not radical_is_maximal_solvable_ideal(f.algebra())]
    for _ in range(500):
        g = random_subalgebra(rng.choice([2, 3, 4]), rng, max_dim=5)
        if not radical_is_maximal_solvable_ideal(g):
            failures.append(g.basis)
    detail = f"{len(FIXTURES)} fixtures + 500 random subalgebras, {len(failures)} failures"
    assert record(4, "radical oracle", not failures, detail, t0, 300), failures[:3]


# --- 5 ------------------------------------------------------------------------------


def ratio_stable(first, second):
    a, b = max(first), max(second)
    return max(a, b) <= 2 * min(a, b)


def test_criterion_05_siegel_reduction(record):
    t0 = time.perf_counter()
    rng = random.Random(505)
    failures = []
    low, up = {n: [] for n in (2, 3, 4)}, {n: [] for n in (2, 3, 4)}
    for k in range(1000):
        n = 2 + k % 3
        g = random_sl_rational(n, rng, bound=1000)
        red = siegel_reduce(g)
        prof = GramProfile.of_vectors(red.reduced_columns(g))
        s, mu = prof.squared_lengths, prof.mu
        exact = all(s[i] <= Fraction(4, 3) * s[i + 1] for i in range(n - 1)) and all(
            abs(mu[i][j]) <= Fraction(1, 2) for i in range(n) for j in range(i + 1, n))
        ht = ht_real(g).value
        if not exact or not red.verify(g) or not ht_bounds_from_profile(red).certifies(ht):
            failures.append(g)
        a = math.sqrt(float(red.a_sup_squared))
        low[n].append(a ** (1 / (n - 1)) / float(ht))
        up[n].append(float(ht) / a)
    stable = all(ratio_stable(d[n][::2], d[n][1::2]) for d in (low, up) for n in low)
    consts = ", ".join(f"N={n}: C={max(low[n]):.3g} C'={max(up[n]):.3g}" for n in low)
    ok = not failures and stable
    detail = f"1000 elements, {len(failures)} violations, constants stable={stable} ({consts})"
    assert record(5, "Siegel reduction", ok, detail, t0, 600), failures[:3]


# --- 6 ------------------------------------------------------------------------------


def test_criterion_06_height_comparison(record):
    t0 = time.perf_counter()
    rng = random.Random(606)
    r1, r2 = {2: [], 3: []}, {2: [], 3: []}
    for k in range(200):
        n = 2 + k % 2
        g = random_sl_rational(n, rng, bound=1000)
        ht = float(ht_real(g).value)
        hta = float(ht_adjoint(SElement([INF], [g])).value)
        r1[n].append(ht / hta)
        r2[n].append(hta / ht ** (2 * (n - 1)))
    stable = all(ratio_stable(d[n][::2], d[n][1::2]) for d in (r1, r2) for n in r1)
    finite = all(math.isfinite(x) for d in (r1, r2) for v in d.values() for x in v)
    consts = ", ".join(f"N={n}: ht<={max(r1[n]):.3g}*ht~, ht~<={max(r2[n]):.3g}*ht^{2 * (n - 1)}" for n in r1)
    assert record(6, "height comparison", stable and finite,
                  f"200 elements, constants stable={stable} ({consts})", t0, 600)


# --- 7 ------------------------------------------------------------------------------


def test_criterion_07_product_formula_bridge(record):
    t0 = time.perf_counter()
    rng = random.Random(707)
    failures = []
    for k in range(100):
        n = 2 + k % 2
        comps = [random_sl_rational(n, rng, bound=6, factor_bound=3) for _ in range(3)]
        g = SElement([INF, 2, 3], comps)
        if ht_S(g).value != ht_S_direct(g).value:
            failures.append(g)
    assert record(7, "product-formula bridge", not failures,
                  f"100 elements of SL_N(Q_S), S = {{inf, 2, 3}}, {len(failures)} mismatches", t0, 300), failures[:3]


# --- 8 ------------------------------------------------------------------------------


def test_criterion_08_unipotent_calculus(record):
    t0 = time.perf_counter()
    rng = random.Random(808)
    bad = {"round trip": 0, "integrality": 0, "reduction": 0}
    for k in range(500):
        n = 2 + k % 4
        gam = random_unimodular(n, 5, rng)
        x = conjugate(gam, strict_upper(n, rng, 9, 4))
        u = exp_nilpotent(x)
        if log_unipotent(u) != x or exp_nilpotent(log_unipotent(u)) != u:
            bad["round trip"] += 1
        z = conjugate(gam, strict_upper(n, rng, 3))
        e = exp_nilpotent([[factorial(n) * v for v in row] for row in z])
        if any(Fraction(v).denominator != 1 for row in e for v in row):
            bad["integrality"] += 1
    for k in range(200):
        n = 2 + k % 4
        gam = random_unimodular(n, 5, rng)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if k % 2 and n > 2:
            pairs = [(0, 1), (1, 2), (0, 2)]  # Heisenberg block
        r = NilpotentAlgebra(conjugate_algebra(LieSubalgebra(n, [elementary(n, i, j) for i, j in pairs]), gam))
        c = [Fraction(rng.randint(-500, 500), rng.randint(1, 6)) for _ in range(r.dim)]
        h = exp_nilpotent(r.element(c))
        red = unipotent_reduce(h, r)
        half = Fraction(factorial(n), 2)
        ok = (mat_mul(h, red.gamma) == red.h_prime
              and all(Fraction(v).denominator == 1 for row in red.gamma for v in row)
              and all(-half <= t < half for t in red.coordinates))
        again = unipotent_reduce(red.h_prime, r)
        ok = ok and again.h_prime == red.h_prime and again.coordinates == red.coordinates
        if not ok:
            bad["reduction"] += 1
    detail = "500 exp/log pairs, 500 integral exponentials, 200 reductions; failures " + \
        ", ".join(f"{k}={v}" for k, v in bad.items())
    assert record(8, "unipotent calculus", not any(bad.values()), detail, t0, 120), bad


# --- 9 ------------------------------------------------------------------------------


def test_criterion_09_nilpotency_dichotomy(record):
    t0 = time.perf_counter()
    rng = random.Random(909)
    failures, nilpotent = [], 0
    for k in range(1000):
        n = 2 + k % 3
        if k % 4 == 0:
            w = conjugate(random_unimodular(n, 4, rng), strict_upper(n, rng, 3))
            w = [[int(v) for v in row] for row in w]
        else:
            w = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            w[n - 1][n - 1] -= sum(w[i][i] for i in range(n))
        s = eigenvalue_product(w)
        is_nil = not any(any(row) for row in matrix_power(w, n))
        nilpotent += is_nil
        if (s == 0) != is_nil or (s != 0 and abs(s) < 1):
            failures.append(w)
    assert record(9, "nilpotency dichotomy", not failures,
                  f"1000 matrices ({nilpotent} nilpotent), {len(failures)} failures", t0, 60), failures[:3]


# --- 10 -----------------------------------------------------------------------------


DETERMINISM_SCRIPT = r"""
import io, json, sys
from pathlib import Path
from effective_levi.cli import main
from effective_levi.fixtures import fixture_names

out, fixtures = Path(sys.argv[1]), Path(sys.argv[2])
inputs = {
    "diag.json": [["4", "0"], ["0", "1/4"]],
    "g3.json": [["2", "1/3", "0"], ["5", "4/3", "1"], ["1", "0", "1/2"]],
    "s.json": {"places": ["inf", 2, 3], "components": [[["2", "0"], ["0", "1/2"]], [["3", "0"], ["0", "1/3"]], [["1", "1/6"], ["0", "1"]]]},
    "k.json": {"A": [[1, 2, 3, -1], [0, 3, -2, 2]]},
    "sol.json": {"A": [[2, 3, 5]], "b": [7]},
    "u.json": {"u": [[2, 1, 0], [1, 1, 1], [0, 0, 3]]},
    "h.json": {"h": [["1", "15/2", "3"], ["0", "1", "-7/3"], ["0", "0", "1"]],
               "r": {"N": 3, "basis": [[[0, 1, 0], [0, 0, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
                                       [[0, 0, 1], [0, 0, 0], [0, 0, 0]]]}},
}
for name, doc in inputs.items():
    (out / name).write_text(json.dumps(doc))
jobs = []
for f in fixture_names():
    for cmd in ("radical", "levi", "standardize"):
        jobs.append((f"{cmd}-{f}", [cmd, str(fixtures / f"{f}.json")]))
jobs += [
    ("height", ["height", str(out / "s.json")]),
    ("height-adjoint", ["height-adjoint", str(out / "g3.json")]),
    ("reduce", ["reduce", str(out / "g3.json")]),
    ("inj-radius", ["inj-radius", str(out / "diag.json")]),
    ("siegel-kernel", ["siegel-kernel", str(out / "k.json")]),
    ("siegel-solve", ["siegel-solve", str(out / "sol.json")]),
    ("small-basis", ["small-basis", str(out / "u.json")]),
    ("unipotent-reduce", ["unipotent-reduce", str(out / "h.json")]),
    ("bench", ["bench-exponents", "--samples", "5", "--seed", "11"]),
    ("bench-csv", ["bench-exponents", "--samples", "5", "--seed", "11", "--format", "csv"]),
]
for name, argv in jobs:
    buf = io.StringIO()
    code = main(argv, out=buf)
    (out / f"{name}.out").write_text(f"exit={code}\n" + buf.getvalue())
"""


def test_criterion_10_determinism(record, tmp_path):
    t0 = time.perf_counter()
    fixtures = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")
    dirs = []
    for run, hashseed in (("a", "1"), ("b", "2")):
        d = tmp_path / run
        d.mkdir()
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        subprocess.run([sys.executable, "-c", DETERMINISM_SCRIPT, str(d), fixtures],
                       check=True, env=env, timeout=1200)
        dirs.append(d)
    names = sorted(p.name for p in dirs[0].iterdir())
    assert names == sorted(p.name for p in dirs[1].iterdir())
    differing = [n for n in names if (dirs[0] / n).read_bytes() != (dirs[1] / n).read_bytes()]
    outputs = [n for n in names if n.endswith(".out")]
    assert record(10, "determinism", not differing and len(outputs) > 40,
                  f"{len(outputs)} witness/report files from two processes, {len(differing)} differ",
                  t0, 1200), differing
