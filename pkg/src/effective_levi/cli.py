"""Command-line front end.

Every subcommand reads one JSON document (a path, or ``-`` for stdin) and
writes one JSON document to stdout. Exit codes: 0 success, 2 malformed or
invalid input (including a witness that fails ``verify``), 3 infeasible system
(the certificate is printed), 4 enumeration budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .errors import EffectiveLeviError, InfeasibleError, ResourceLimitError
from .linalg import DEFAULT_BUDGET, IntegerLattice
from .serialize import (
    algebra_from_json,
    check_schema,
    document,
    dump,
    load,
    optional_algebra_from_json,
    parse_places,
    read_int_matrix,
    read_matrix,
    read_q,
    selement_from_json,
    verify_witness,
)
from . import witnesses as W

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_BUDGET = 0, 2, 3, 4


def _read(path: str):
    if path == "-":
        return load(sys.stdin.read())
    try:
        with open(path) as fh:
            return load(fh.read())
    except OSError as exc:
        raise EffectiveLeviError(f"cannot read {path}: {exc.strerror}") from exc


def _field(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise EffectiveLeviError(f"input needs a {key!r} field")
    return doc[key]


# --------------------------------------------------------------------------
# Subcommands; each returns the output document


def cmd_radical(args):
    from .lie import radical

    g = algebra_from_json(_read(args.input))
    return W.radical_witness(g, radical(g))


def _levi(args):
    from .levi import effective_levi

    doc = _read(args.input)
    g = algebra_from_json(doc)
    l = optional_algebra_from_json(doc, "l", g.N)
    return effective_levi(g, l, budget=args.budget)


def cmd_levi(args):
    return W.levi_witness(_levi(args))


def cmd_standardize(args):
    from .levi import standardize_radical

    d = _levi(args)
    return W.standardization_witness(d.g, d.h, d.r, standardize_radical(d.g, d.h, d.r))


def cmd_height(args):
    from .heights import ht_S

    g = selement_from_json(_read(args.input), parse_places(args.S))
    return W.height_witness(g, ht_S(g, args.budget))


def cmd_height_adjoint(args):
    from .heights import ht_adjoint

    doc = _read(args.input)
    g = selement_from_json(doc, parse_places(args.S))
    L = optional_algebra_from_json(doc, "L", g.N) if isinstance(doc, dict) else None
    return W.height_witness(g, ht_adjoint(g, L, args.budget), "height-adjoint", L)


def cmd_height_subspace(args):
    from .lie import height_subspace

    doc = _read(args.input)
    if isinstance(doc, dict) and "basis" in doc:
        g = algebra_from_json(doc)
        vecs, n = g.basis, g.N
    else:
        raw = _field(doc, "vectors")
        vecs = [read_matrix(v) if v and isinstance(v[0], list) else [read_q(x) for x in v] for v in raw]
        n = doc.get("N")
    return W.subspace_height_witness(vecs, n, height_subspace(vecs, n))


def _matrix_input(doc, key="g"):
    if isinstance(doc, dict):
        check_schema(doc)
        doc = _field(doc, key)
    return read_matrix(doc)


def cmd_reduce(args):
    from .heights import ht_real, siegel_reduce

    g = _matrix_input(_read(args.input))
    delta = read_q(args.delta)
    red = siegel_reduce(g, delta)
    return W.siegel_reduction_witness(g, red, delta, ht_real(g, args.budget))


def cmd_inj_radius(args):
    from .heights import injectivity_radius_lower

    g = _matrix_input(_read(args.input))
    eta0, delta = read_q(args.eta0), read_q(args.delta)
    return W.injectivity_witness(g, injectivity_radius_lower(g, eta0, delta), eta0, delta)


def cmd_siegel_kernel(args):
    from .siegel import siegel_kernel_basis

    a = read_int_matrix(_matrix_input(_read(args.input), "A"))
    return W.siegel_kernel_witness(a, siegel_kernel_basis(a, args.budget))


def cmd_siegel_solve(args):
    from .siegel import siegel_inhomogeneous

    doc = _read(args.input)
    a = read_int_matrix(_field(doc, "A"))
    b = [int(read_q(t)) for t in _field(doc, "b")]
    try:
        sol = siegel_inhomogeneous(a, b, args.budget)
    except InfeasibleError as exc:
        exc.witness = W.infeasible_witness(a, b, exc.certificate)
        raise
    return W.siegel_solution_witness(a, b, sol)


def cmd_small_basis(args):
    from .siegel import extract_small_basis

    doc = _read(args.input)
    u = read_int_matrix(_field(doc, "u"))
    vz_rows = doc.get("VZ")
    n = doc.get("ambient_dim") or (len(u[0]) if u else None)
    if n is None:
        raise EffectiveLeviError("ambient_dim is required when u is empty")
    vz = IntegerLattice(read_int_matrix(vz_rows), n) if vz_rows is not None else None
    v = extract_small_basis(vz if vz is not None else IntegerLattice.standard(n), u)
    return W.small_basis_witness(vz, n, u, v)


def cmd_unipotent_reduce(args):
    from .unipotent import NilpotentAlgebra, unipotent_reduce

    doc = _read(args.input)
    h = read_matrix(_field(doc, "h"))
    r = algebra_from_json(_field(doc, "r"))
    return W.unipotent_witness(h, r, unipotent_reduce(h, NilpotentAlgebra(r)))


def cmd_bench(args):
    from .bench import bench_exponents
    from .fixtures import fixture_names

    seeds = [s for s in args.seeds.split(",") if s] if args.seeds else fixture_names()
    grid = [int(b) for b in args.grid.split(",") if b]
    return bench_exponents(seeds, grid, args.samples, args.seed, args.budget)


def cmd_verify(args):
    doc = _read(args.input)
    fails = verify_witness(doc)
    out = document("verification", verified_kind=doc.get("kind") if isinstance(doc, dict) else None,
                   ok=not fails, failures=fails)
    if fails:
        raise _VerificationFailed(out)
    return out


class _VerificationFailed(Exception):
    def __init__(self, doc):
        super().__init__("witness failed verification")
        self.doc = doc


COMMANDS = {
    "radical": (cmd_radical, "radical of a Lie subalgebra of sl_N"),
    "levi": (cmd_levi, "Levi decomposition with height data"),
    "standardize": (cmd_standardize, "unimodular delta putting the radical in standard block form"),
    "height": (cmd_height, "height ht_S of an element of SL_N(Q_S)"),
    "height-adjoint": (cmd_height_adjoint, "height of the adjoint action on L"),
    "height-subspace": (cmd_height_subspace, "height of a rational subspace of sl_N"),
    "reduce": (cmd_reduce, "Siegel reduction of g in SL_N(Q)"),
    "inj-radius": (cmd_inj_radius, "lower bound for the injectivity radius at g"),
    "siegel-kernel": (cmd_siegel_kernel, "small integral kernel basis"),
    "siegel-solve": (cmd_siegel_solve, "small rational solution of A x = b"),
    "small-basis": (cmd_small_basis, "flag-adapted small basis of a lattice"),
    "unipotent-reduce": (cmd_unipotent_reduce, "small integral unipotent translate"),
    "bench-exponents": (cmd_bench, "measure growth exponents on conjugated fixtures"),
    "verify": (cmd_verify, "re-check any witness document"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="effective-levi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        s = sub.add_parser(name, help=help_text)
        if name != "bench-exponents":
            s.add_argument("input", help="JSON input file, or - for stdin")
        s.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration node budget")
        s.add_argument("--format", choices=("json", "csv"), default="json")
        if name in ("height", "height-adjoint"):
            s.add_argument("--S", default="inf", help="comma-separated places, e.g. inf,2,3")
        if name in ("reduce", "inj-radius"):
            s.add_argument("--delta", default="1", help="LLL parameter in (1/4, 1]")
        if name == "inj-radius":
            s.add_argument("--eta0", default="1/4", help="radius of the log chart")
        if name == "bench-exponents":
            s.add_argument("--seeds", default=None, help="comma-separated fixture names (default: all)")
            s.add_argument("--grid", default="10,100,1000", help="comma-separated entry bounds B")
            s.add_argument("--samples", type=int, default=200)
            s.add_argument("--seed", type=int, default=0, help="rng seed")
    return p


def _emit(doc, fmt: str, out):
    if fmt == "csv":
        if doc.get("kind") != "bench-report":
            raise EffectiveLeviError("--format csv is only available for bench-exponents")
        from .bench import report_to_csv

        out.write(report_to_csv(doc))
    else:
        out.write(dump(doc))


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        if args.budget < 1:
            raise EffectiveLeviError("--budget must be positive")
        doc = func(args)
        _emit(doc, args.format, out)
        return EXIT_OK
    except _VerificationFailed as exc:
        out.write(dump(exc.doc))
        return EXIT_INVALID
    except InfeasibleError as exc:
        wit = getattr(exc, "witness", None) or document("infeasible", certificate=exc.certificate, message=str(exc))
        out.write(dump(wit))
        return EXIT_INFEASIBLE
    except ResourceLimitError as exc:
        out.write(dump(document("error", error="resource-limit", message=str(exc), nodes=exc.nodes)))
        return EXIT_BUDGET
    except EffectiveLeviError as exc:
        out.write(dump(document("error", error=type(exc).__name__, message=str(exc))))
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
