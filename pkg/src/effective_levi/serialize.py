"""JSON documents for inputs and witnesses.

Every document carries ``"schema": "effective-levi/v1"`` and a ``"kind"``.
Rationals are written as ``"p/q"`` strings (``"p"`` when integral); integer
bases and unimodular matrices are plain JSON integers. :func:`dump` is
deterministic (sorted keys, fixed indentation), which the determinism check
relies on.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .errors import EffectiveLeviError
from .heights import INF, SElement, canonical_places, parse_place
from .lie import LieSubalgebra
from .matrix import as_matrix, format_rational, parse_rational

SCHEMA = "effective-levi/v1"


def dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise EffectiveLeviError(f"malformed JSON: {exc}") from exc


def document(kind: str, **fields) -> Dict[str, Any]:
    out = {"schema": SCHEMA, "kind": kind}
    out.update(fields)
    return out


def check_schema(doc, kind: Optional[str] = None):
    if not isinstance(doc, dict):
        raise EffectiveLeviError("expected a JSON object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise EffectiveLeviError(f"unsupported schema {doc.get('schema')!r}")
    if kind is not None and doc.get("kind", kind) != kind:
        raise EffectiveLeviError(f"expected a {kind!r} document, got {doc.get('kind')!r}")


# --------------------------------------------------------------------------
# Scalars and matrices


def q(x) -> str:
    return format_rational(x)


def qvec(v) -> List[str]:
    return [q(x) for x in v]


def qmat(m) -> List[List[str]]:
    return [qvec(r) for r in m]


def read_q(x) -> Fraction:
    return parse_rational(x)


def read_matrix(m):
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise EffectiveLeviError("a matrix must be a list of rows")
    return as_matrix(m)


def read_int_matrix(m) -> List[List[int]]:
    mat = read_matrix(m)
    out = []
    for row in mat:
        r = []
        for x in row:
            if Fraction(x).denominator != 1:
                raise EffectiveLeviError("expected integer entries")
            r.append(int(x))
        out.append(r)
    return out


def intmat(m) -> List[List[int]]:
    return [[int(x) for x in row] for row in m]


# --------------------------------------------------------------------------
# Algebras and group elements


def algebra_to_json(g: LieSubalgebra) -> Dict[str, Any]:
    """``{"N", "basis"}`` with the saturated integral basis as N x N integer matrices."""
    return {"N": g.N, "basis": [intmat(x) for x in g.basis]}


def algebra_from_json(doc) -> LieSubalgebra:
    """Accepts a bare ``{"N", "basis"}``, a ``lie-subalgebra`` document or a fixture."""
    if not isinstance(doc, dict) or "basis" not in doc:
        raise EffectiveLeviError("a Lie subalgebra needs a 'basis'")
    check_schema(doc)
    basis = [read_matrix(x) for x in doc["basis"]]
    n = doc.get("N")
    if n is None:
        if not basis:
            raise EffectiveLeviError("N is required for the zero algebra")
        n = len(basis[0])
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise EffectiveLeviError("N must be a positive integer")
    if not basis:
        return LieSubalgebra.zero(n)
    return LieSubalgebra(n, basis)


def optional_algebra_from_json(doc, key: str, n: int) -> Optional[LieSubalgebra]:
    val = doc.get(key) if isinstance(doc, dict) else None
    if val is None:
        return None
    if isinstance(val, list):
        val = {"N": n, "basis": val}
    return algebra_from_json(val)


def selement_to_json(g: SElement) -> Dict[str, Any]:
    return {
        "places": [p if p != INF else INF for p in g.places],
        "components": [qmat(c) for c in g.components],
    }


def selement_from_json(doc, places=None) -> SElement:
    """An ``SElement`` document, or a bare rational matrix placed diagonally in S."""
    if isinstance(doc, dict) and "components" in doc:
        check_schema(doc)
        pl = doc.get("places")
        if not isinstance(pl, list):
            raise EffectiveLeviError("'places' must be a list")
        return SElement(pl, [read_matrix(c) for c in doc["components"]])
    if isinstance(doc, dict) and "matrix" in doc:
        check_schema(doc)
        doc = doc["matrix"]
    return SElement.rational(read_matrix(doc), places)


def parse_places(text: Optional[str]):
    """``"inf,2,3"`` -> canonical place tuple (the real place is always added)."""
    if text is None or not text.strip():
        return (INF,)
    return canonical_places([parse_place(p) for p in text.split(",") if p.strip()] + [INF])


# --------------------------------------------------------------------------
# Fixtures


def fixture_to_json(f) -> Dict[str, Any]:
    doc = document(
        "fixture",
        name=f.name,
        description=f.description,
        N=f.N,
        basis=[intmat(x) for x in f.basis],
        expected={
            "dim_h": f.dim_h,
            "dim_r": f.dim_r,
            "derived_length_r": f.derived_length_r,
            "nilpotent_radical": f.nilpotent_radical,
        },
    )
    if f.l_basis is not None:
        doc["l"] = [intmat(x) for x in f.l_basis]
    return doc


# --------------------------------------------------------------------------
# Witness verification


def verify_witness(doc) -> List[str]:
    """Re-check a witness document; returns the failed conditions (empty when valid)."""
    from . import witnesses

    if not isinstance(doc, dict):
        return ["not a JSON object"]
    if doc.get("schema") != SCHEMA:
        return [f"unsupported schema {doc.get('schema')!r}"]
    kind = doc.get("kind")
    check = witnesses.VERIFIERS.get(kind)
    if check is None:
        return [f"no verifier for kind {kind!r}"]
    try:
        return check(doc)
    except EffectiveLeviError as exc:
        return [f"{type(exc).__name__}: {exc}"]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        return [f"malformed witness: {type(exc).__name__}: {exc}"]
