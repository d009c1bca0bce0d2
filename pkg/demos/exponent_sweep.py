"""A small exponent sweep: fitted log-log slopes per fixture and entry bound.

Run: python demos/exponent_sweep.py [samples]
"""

import sys

from effective_levi.bench import bench_exponents


def fmt(x):
    return "   -  " if x is None else f"{x:6.3f}"


def main(samples=20):
    seeds = ["sl2_semidirect", "sl2_heisenberg", "heisenberg_sl3", "borel_sl3"]
    report = bench_exponents(seeds, grid=(10, 100, 1000), samples=samples, rng_seed=0)
    print(f"{'fixture':<16}{'B':>6}  {'relation':<8} {'slope':>6}  95% band")
    for f in report["fits"]:
        band = "" if f["degenerate"] else f"[{f['ci_low']:.3f}, {f['ci_high']:.3f}]"
        print(f"{f['fixture']:<16}{f['B']:>6}  {f['relation']:<8} {fmt(f['slope'])}  {band}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 20)
