"""Harness that measures the growth exponents of the constructive steps.

Each fixture is conjugated by random ``gamma`` in SL_N(Z) with entries at most B.
Per run we record the height T of the conjugated algebra, the heights of the
Levi factor and radical that :func:`effective_levi` returns, and for the group
element ``x = gamma^-1 diag(B, 1, ..., 1, 1/B)`` its Siegel size ``|a|^2`` and
height. Log-log slopes are fitted per fixture and per B with 95% t-intervals.
"""

from __future__ import annotations

import csv
import io
import math
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from scipy import stats

from .errors import EffectiveLeviError
from .fixtures import conjugate_algebra, get_fixture, random_unimodular
from .heights import ht_real, siegel_reduce
from .levi import effective_levi
from .lie import derived_length
from .linalg import DEFAULT_BUDGET
from .matrix import inverse, mat_mul
from .serialize import SCHEMA, document, q, read_q

DEFAULT_GRID = (10, 100, 1000)

ROW_FIELDS = [
    "fixture", "B", "sample", "T", "ht_h", "ht_r", "a_sup_squared", "ht", "depth",
    "derived_length_r", "valid",
]


def _log(x) -> float:
    x = Fraction(x)
    return math.log(x.numerator) - math.log(x.denominator)


def fit_slope(xs: Sequence[float], ys: Sequence[float]) -> Dict:
    """Least-squares slope of ys against xs with a 95% t-interval.

    The fit is reported as degenerate when fewer than three distinct x values
    are present; slope and interval are then None.
    """
    n = len(xs)
    distinct = len(set(round(x, 12) for x in xs))
    out = {"n": n, "distinct_x": distinct, "degenerate": distinct < 3}
    if out["degenerate"]:
        out.update(slope=None, intercept=None, stderr=None, ci_low=None, ci_high=None)
        return out
    res = stats.linregress(xs, ys)
    t = float(stats.t.ppf(0.975, n - 2))
    slope, se = float(res.slope), float(res.stderr)
    out.update(
        slope=slope,
        intercept=float(res.intercept),
        stderr=se,
        ci_low=slope - t * se,
        ci_high=slope + t * se,
    )
    return out


def _test_element(gamma, B: int):
    n = len(gamma)
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 1
    if n > 1:
        d[0][0] = B
        d[n - 1][n - 1] = Fraction(1, B)
    return mat_mul(inverse(gamma), d)


def run_sample(name: str, B: int, sample: int, rng: random.Random, budget: int = DEFAULT_BUDGET) -> Dict:
    f = get_fixture(name)
    gamma = random_unimodular(f.N, B, rng)
    g = conjugate_algebra(f.algebra(), gamma)
    l = f.l_algebra()
    if l is not None:
        l = conjugate_algebra(l, gamma)
    row = {"fixture": name, "B": B, "sample": sample}
    try:
        dec = effective_levi(g, l, budget=budget)
        row.update(T=dec.T, ht_h=dec.ht_h, ht_r=dec.ht_r, depth=dec.depth,
                   derived_length_r=derived_length(dec.r) or 0, valid=True)
    except EffectiveLeviError as exc:
        row.update(T=None, ht_h=None, ht_r=None, depth=None, derived_length_r=None,
                   valid=False, error=f"{type(exc).__name__}: {exc}")
    x = _test_element(gamma, B)
    red = siegel_reduce(x)
    row["a_sup_squared"] = red.a_sup_squared
    row["ht"] = ht_real(x, budget).value
    return row


def _fits(rows: List[Dict], seeds, grid) -> List[Dict]:
    out = []
    groups = [(s, B) for s in seeds for B in grid] + [("*", B) for B in grid]
    for seed, B in groups:
        sel = [r for r in rows if r["B"] == B and (seed == "*" or r["fixture"] == seed) and r["valid"]]
        for target, xkey, ykey in (("ht_h~T", "T", "ht_h"), ("ht_r~T", "T", "ht_r"), ("ht~|a|", "a_sup_squared", "ht")):
            if seed == "*" and target != "ht~|a|":
                continue  # intercepts differ between fixtures; pooled only for the group side
            xs = [_log(r[xkey]) for r in sel]
            ys = [_log(r[ykey]) for r in sel]
            if xkey == "a_sup_squared":
                xs = [x / 2 for x in xs]
            fit = fit_slope(xs, ys)
            fit.update(fixture=seed, B=B, relation=target)
            out.append(fit)
    return out


def bench_exponents(
    seeds: Sequence[str],
    grid: Sequence[int] = DEFAULT_GRID,
    samples: int = 200,
    rng_seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> Dict:
    """Run the harness; the report is a ``bench-report`` witness document."""
    seeds = list(seeds)
    grid = [int(B) for B in grid]
    for s in seeds:
        try:
            get_fixture(s)
        except KeyError as exc:
            raise EffectiveLeviError(exc.args[0]) from None
    if samples < 1 or any(B < 1 for B in grid):
        raise EffectiveLeviError("samples and entry bounds must be positive")
    rng = random.Random(rng_seed)
    rows = []
    for B in grid:
        for s in seeds:
            for k in range(samples):
                rows.append(run_sample(s, B, k, rng, budget))
    fits = _fits(rows, seeds, grid)
    return document(
        "bench-report",
        header={"rng_seed": rng_seed, "seeds": seeds, "grid": grid, "samples": samples},
        rows=[_row_json(r) for r in rows],
        fits=fits,
    )


def _row_json(r: Dict) -> Dict:
    out = {}
    for k, v in r.items():
        if isinstance(v, (int, Fraction)) and not isinstance(v, bool) and k not in ("B", "sample", "depth", "derived_length_r"):
            out[k] = q(v)
        else:
            out[k] = v
    return out


def _row_values(r: Dict) -> Dict:
    out = dict(r)
    for k in ("T", "ht_h", "ht_r", "a_sup_squared", "ht"):
        if out.get(k) is not None:
            out[k] = read_q(out[k])
    return out


def report_to_csv(doc: Dict) -> str:
    """CSV with the header recorded as ``#`` comment lines before the column names."""
    buf = io.StringIO()
    h = doc["header"]
    buf.write(f"# schema={SCHEMA}\n")
    buf.write(f"# rng_seed={h['rng_seed']} samples={h['samples']} "
              f"grid={' '.join(map(str, h['grid']))} seeds={' '.join(h['seeds'])}\n")
    w = csv.DictWriter(buf, fieldnames=ROW_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in doc["rows"]:
        w.writerow(r)
    return buf.getvalue()


def slope(doc: Dict, fixture: str, B: int, relation: str = "ht_h~T") -> Optional[float]:
    for f in doc["fits"]:
        if f["fixture"] == fixture and f["B"] == B and f["relation"] == relation:
            return f["slope"]
    raise KeyError((fixture, B, relation))


def verify_report(doc: Dict) -> List[str]:
    h = doc["header"]
    rows = doc["rows"]
    out = []
    expected = h["samples"] * len(h["grid"]) * len(h["seeds"])
    if len(rows) != expected:
        out.append(f"row count {len(rows)} != samples x |grid| x |seeds| = {expected}")
    bad = [r for r in rows if not r["valid"]]
    if bad:
        out.append(f"{len(bad)} runs did not produce a valid decomposition")
    for r in rows:
        if r["valid"] and r["depth"] > r["derived_length_r"]:
            out.append("recursion depth exceeds derived length")
            break
    fits = _fits([_row_values(r) for r in rows], h["seeds"], h["grid"])
    if fits != doc["fits"]:
        out.append("fits do not match the rows")
    return out
