"""JSON serialization for all file-facing values.

Scalars are 4-arrays of rational strings ["a/b", ...] for the coefficients
of (1, i, sqrt(d), i sqrt(d)); d is recorded once per file.  Emission is
canonical (sorted keys, fixed separators, trailing newline), so equal values
serialize to equal bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .scalars import Poly, Scalar
from .linalg import AffineSpace, Mat
from .sualg import Signature, SuElement
from .extensions import Extension, LieAlg
from .cralgebra import BasisChoice, CrAlgebra

__all__ = [
    "SerializeError",
    "scalar_to_json",
    "scalar_from_json",
    "mat_to_json",
    "mat_from_json",
    "signature_to_json",
    "signature_from_json",
    "extension_to_json",
    "extension_from_json",
    "cralgebra_to_json",
    "cralgebra_from_json",
    "choice_to_json",
    "choice_from_json",
    "affine_space_to_json",
    "dumps_canonical",
]


class SerializeError(ValueError):
    pass


def dumps_canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _frac_str(x: Fraction) -> str:
    return str(x)


def _frac_parse(s: str, where: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SerializeError(f"{where}: bad rational {s!r}: {exc}") from exc


def scalar_to_json(x: Scalar) -> list[str]:
    return [_frac_str(c) for c in x.coefficients]


def scalar_from_json(arr: Any, d: int, where: str = "scalar") -> Scalar:
    if not isinstance(arr, list) or len(arr) != 4:
        raise SerializeError(f"{where}: expected a 4-array of rationals")
    return Scalar(*(_frac_parse(s, where) for s in arr), d=d)


def _poly_to_json(p: Poly) -> dict:
    terms = []
    for mono in sorted(p.terms):
        terms.append([[list(pair) for pair in mono], scalar_to_json(p.terms[mono])])
    return {"terms": terms}


def _poly_from_json(doc: Any, d: int, where: str) -> Poly:
    if not isinstance(doc, dict) or "terms" not in doc:
        raise SerializeError(f"{where}: expected a polynomial object")
    terms = {}
    for item in doc["terms"]:
        mono_raw, coeff_raw = item
        mono = tuple((str(name), int(exp)) for name, exp in mono_raw)
        terms[mono] = scalar_from_json(coeff_raw, d, where)
    return Poly(terms, d=d)


def _entry_to_json(e) -> Any:
    if isinstance(e, Poly):
        return _poly_to_json(e)
    return scalar_to_json(e)


def _entry_from_json(doc: Any, d: int, where: str):
    if isinstance(doc, dict):
        return _poly_from_json(doc, d, where)
    return scalar_from_json(doc, d, where)


def mat_to_json(m: Mat) -> list:
    return [[_entry_to_json(e) for e in row] for row in m.entries]


def mat_from_json(doc: Any, d: int, where: str = "matrix") -> Mat:
    if not isinstance(doc, list) or not doc:
        raise SerializeError(f"{where}: expected a nested array")
    return Mat([[_entry_from_json(e, d, where) for e in row] for row in doc], d=d)


def vector_to_json(vec: Sequence[Scalar]) -> list:
    return [scalar_to_json(c) for c in vec]


def vector_from_json(doc: Any, d: int, where: str = "vector") -> tuple[Scalar, ...]:
    if not isinstance(doc, list):
        raise SerializeError(f"{where}: expected an array of scalars")
    return tuple(scalar_from_json(c, d, where) for c in doc)


def signature_to_json(sig: Signature) -> dict:
    return {"p": sig.p, "q": sig.q, "d": sig.d}


def signature_from_json(doc: Any, where: str = "signature") -> Signature:
    try:
        return Signature(int(doc["p"]), int(doc["q"]), int(doc["d"]))
    except (KeyError, TypeError) as exc:
        raise SerializeError(f"{where}: expected {{p, q, d}}: {exc}") from exc


def lie_alg_to_json(alg: LieAlg) -> dict:
    return {
        "dim": alg.dim,
        "names": list(alg.names),
        "structure_constants": [
            [[scalar_to_json(c) for c in row] for row in plane] for plane in alg.c
        ],
    }


def lie_alg_from_json(doc: Any, d: int, where: str = "algebra") -> LieAlg:
    try:
        dim = int(doc["dim"])
        names = tuple(str(n) for n in doc["names"])
        cube_raw = doc["structure_constants"]
    except (KeyError, TypeError) as exc:
        raise SerializeError(f"{where}: expected {{dim, names, structure_constants}}: {exc}") from exc
    if len(names) != dim or len(cube_raw) != dim:
        raise SerializeError(f"{where}: inconsistent dimension")
    cube = tuple(
        tuple(
            tuple(scalar_from_json(c, d, f"{where}.structure_constants") for c in row)
            for row in plane
        )
        for plane in cube_raw
    )
    alg = LieAlg(dim, names, cube, d=d)
    alg.validate()
    return alg


def extension_to_json(ext: Extension) -> dict:
    return {
        "signature": signature_to_json(ext.sig),
        "algebra": lie_alg_to_json(ext.k),
        "l_indices": list(ext.l_indices),
        "alpha": [mat_to_json(a.mat) for a in ext.alpha],
        "unknowns": list(ext.unknowns),
    }


def extension_from_json(doc: Any) -> Extension:
    sig = signature_from_json(doc.get("signature"))
    alg = lie_alg_from_json(doc.get("algebra"), sig.d)
    l_indices = tuple(int(i) for i in doc.get("l_indices", []))
    alpha_raw = doc.get("alpha")
    if not isinstance(alpha_raw, list) or len(alpha_raw) != alg.dim:
        raise SerializeError("alpha: expected one matrix per basis element")
    alpha = tuple(
        SuElement(mat_from_json(m, sig.d, f"alpha[{i}]"), sig, _validated=True)
        for i, m in enumerate(alpha_raw)
    )
    unknowns = tuple(str(u) for u in doc.get("unknowns", []))
    ext = Extension(alg, l_indices, sig, alpha, unknowns)
    # full membership validation for unknown-free matrices
    if not unknowns:
        from .sualg import membership_problems

        for i, a in enumerate(alpha):
            problems = membership_problems(a.mat, sig)
            if problems:
                raise SerializeError(f"alpha[{i}]: {'; '.join(problems)}")
    return ext


def cralgebra_to_json(cr: CrAlgebra) -> dict:
    return {
        "d": cr.k.d,
        "algebra": lie_alg_to_json(cr.k),
        "q_basis": [
            [vector_to_json(re), vector_to_json(im)] for re, im in cr.q_basis
        ],
    }


def cralgebra_from_json(doc: Any) -> CrAlgebra:
    try:
        d = int(doc["d"])
    except (KeyError, TypeError) as exc:
        raise SerializeError(f"cr algebra: missing field d: {exc}") from exc
    alg = lie_alg_from_json(doc.get("algebra"), d)
    q_raw = doc.get("q_basis")
    if not isinstance(q_raw, list) or not q_raw:
        raise SerializeError("q_basis: expected a nonempty array of [re, im] pairs")
    q_basis = tuple(
        (
            vector_from_json(pair[0], d, "q_basis.re"),
            vector_from_json(pair[1], d, "q_basis.im"),
        )
        for pair in q_raw
    )
    return CrAlgebra(alg, q_basis)


def choice_to_json(choice: BasisChoice, d: int) -> dict:
    return {
        "d": d,
        "representatives": [vector_to_json(r) for r in choice.representatives],
        "complement": vector_to_json(choice.complement),
    }


def choice_from_json(doc: Any) -> BasisChoice:
    try:
        d = int(doc["d"])
        reps = doc["representatives"]
        comp = doc["complement"]
    except (KeyError, TypeError) as exc:
        raise SerializeError(f"choice: expected {{d, representatives, complement}}: {exc}") from exc
    return BasisChoice(
        representatives=tuple(vector_from_json(r, d, "representatives") for r in reps),
        complement=vector_from_json(comp, d, "complement"),
    )


def affine_space_to_json(space: AffineSpace) -> dict:
    return {
        "ambient": space.ambient,
        "dimension": space.dim,
        "particular": None if space.is_empty else vector_to_json(space.particular),
        "directions": [vector_to_json(v) for v in space.directions],
    }
