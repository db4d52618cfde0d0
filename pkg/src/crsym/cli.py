"""Command-line front end.

Commands
--------
find-symmetries   enumerate origin symmetries constrained by two null lines
check-extension   validate an extension file (curvature, normality, ...)
check-cralgebra   run the CR-algebra pipeline on a file, with a choice file
                  or in bounded search mode
builtin           emit a built-in model's data files; --verify reruns its
                  regression suite

Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or parse
error.  ``--format machine`` prints one canonical JSON document, bit-stable
for a fixed --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import catalog, serialize
from .cralgebra import (
    BasisChoice,
    CrAlgebraError,
    SymmetricVerdictKind,
    check_symmetric,
    derive_l_and_H,
    injectivity_shortcut,
    nu_automorphism_test,
    search_choices,
    verify_variety_membership,
)
from .extensions import (
    ExtensionError,
    NormalizationError,
    curvature,
    extension_problems,
    is_flat,
    kostant_codifferential,
    metrizability_check,
    nijenhuis_check,
    solve_normalization,
    symmetric_skeleton,
    weyl_component,
)
from .linalg import AffineSpace
from .scalars import Scalar
from .sualg import Signature, SualgError
from .symmetries import (
    Mode,
    NullLinePair,
    SymmetryError,
    classify_pair,
    find_symmetries,
    line_image_matches,
    run_symmetry_property_suite,
    symmetry_from_coords,
)

USAGE_ERROR = 2


@dataclass
class Report:
    command: str
    rows: list[dict] = field(default_factory=list)
    not_checked: list[str] = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.rows.append(
            {"check": name, "status": "pass" if passed else "fail", "detail": detail}
        )
        return passed

    def info(self, name: str, detail: Any) -> None:
        self.rows.append({"check": name, "status": "info", "detail": detail})

    @property
    def passed(self) -> bool:
        return all(r["status"] != "fail" for r in self.rows)

    def exit_code(self) -> int:
        return 0 if self.passed else 1


def render(report: Report, fmt: str) -> str:
    if fmt == "machine":
        doc = {
            "command": report.command,
            "rows": report.rows,
            "not_checked": report.not_checked,
            "payload": report.payload,
        }
        return serialize.dumps_canonical(doc)
    lines = [f"# {report.command}"]
    for row in report.rows:
        tag = {"pass": "PASS", "fail": "FAIL", "info": "info"}[row["status"]]
        detail = row["detail"]
        if isinstance(detail, (dict, list)):
            detail = json.dumps(detail, sort_keys=True)
        lines.append(f"[{tag}] {row['check']}" + (f": {detail}" if detail != "" else ""))
    for note in report.not_checked:
        lines.append(f"not checked: {note}")
    return "\n".join(lines) + "\n"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# find-symmetries
# ---------------------------------------------------------------------------


def _parse_vector(text: str, d: int, where: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{where}: not valid JSON: {exc}") from exc
    try:
        return serialize.vector_from_json(doc, d, where)
    except serialize.SerializeError as exc:
        raise UsageError(str(exc)) from exc


def _z_summary(space: AffineSpace, n: int) -> str:
    if space.is_empty:
        return "empty"
    z_free = any(not direction[2 * n].is_zero() for direction in space.directions)
    if z_free:
        return "z free (non-involutive members exist)"
    return f"z fixed at {space.particular[2 * n]}"


def _solution_payload(space: AffineSpace, n: int) -> dict:
    return {
        "solution": serialize.affine_space_to_json(space),
        "z": _z_summary(space, n),
    }


def cmd_find_symmetries(args: argparse.Namespace, fmt: str) -> tuple[Report, int]:
    sig = Signature(args.p, args.q, d=args.d)
    u = _parse_vector(args.u, sig.d, "--u")
    v = _parse_vector(args.v, sig.d, "--v")
    try:
        pair = NullLinePair(u, v, sig)
    except SymmetryError as exc:
        raise UsageError(str(exc)) from exc
    report = Report(command="find-symmetries")
    report.info("classification", classify_pair(pair, sig).value)
    modes = [Mode.PRESERVE, Mode.SWAP] if args.mode == "any" else [Mode(args.mode)]
    for mode in modes:
        space = find_symmetries(pair, mode, sig)
        report.payload[mode.value] = _solution_payload(space, sig.n)
        report.info(f"{mode.value}-solutions", _z_summary(space, sig.n))
        # soundness: every sampled point realizes the requested line images
        ok = True
        for point in space.points():
            s = symmetry_from_coords(point, sig)
            if mode is Mode.PRESERVE:
                ok = ok and line_image_matches(s, u, u) and line_image_matches(s, v, v)
            else:
                ok = ok and line_image_matches(s, u, v) and line_image_matches(s, v, u)
        report.check(f"{mode.value}-soundness", ok)
    return report, report.exit_code()


# ---------------------------------------------------------------------------
# check-extension
# ---------------------------------------------------------------------------


def _extension_report(ext, report: Report) -> None:
    if ext.unknowns:
        try:
            ext = solve_normalization(ext)
            report.check("normalization-solve", True, "unknowns pinned uniquely")
            report.payload["solved_extension"] = serialize.extension_to_json(ext)
        except NormalizationError as exc:
            report.check("normalization-solve", False, str(exc))
            return
    issues = extension_problems(ext)
    codes = {issue.code for issue in issues}
    details = {issue.code: issue.message for issue in issues}
    for code, label in (
        ("l_closure", "l-subalgebra-closure"),
        ("abar_iso", "abar-isomorphism"),
        ("alpha_l_parabolic", "alpha-l-in-parabolic"),
        ("equivariance", "equivariance"),
    ):
        report.check(label, code not in codes, details.get(code, ""))
    tau = curvature(ext)
    escapes = tau.escapes_p()
    report.check(
        "curvature-in-parabolic",
        not escapes,
        "" if not escapes else f"offending pairs {escapes}",
    )
    residual = kostant_codifferential(ext)
    bad = sorted(i for i, v in residual.items() if not v.is_zero())
    report.check(
        "normality",
        not bad,
        "" if not bad else "nonzero codifferential at basis "
        + ", ".join(ext.k.names[i] for i in bad),
    )
    flat = tau.is_zero()
    report.info("flatness", str(flat).lower())
    weyl = weyl_component(ext)
    weyl_nonzero = any(not v.is_zero() for v in weyl.values())
    report.info("weyl-component", "nonzero" if weyl_nonzero else "zero")
    report.info("metrizability", str(metrizability_check(ext)).lower())
    if not escapes and not bad:
        report.check("nijenhuis", nijenhuis_check(ext))
    else:
        report.check("nijenhuis", False, "requires a normal extension")
    report.not_checked.append(
        "group-level equivariance and automorphism integration (algebra level only)"
    )


def cmd_check_extension(args: argparse.Namespace, fmt: str) -> tuple[Report, int]:
    doc = _load_json(args.file)
    try:
        ext = serialize.extension_from_json(doc)
    except (serialize.SerializeError, ExtensionError, SualgError) as exc:
        raise UsageError(f"{args.file}: {exc}") from exc
    report = Report(command="check-extension")
    _extension_report(ext, report)
    return report, report.exit_code()


# ---------------------------------------------------------------------------
# check-cralgebra
# ---------------------------------------------------------------------------


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from exc


def cmd_check_cralgebra(args: argparse.Namespace, fmt: str) -> tuple[Report, int]:
    doc = _load_json(args.file)
    try:
        cr = serialize.cralgebra_from_json(doc)
    except (serialize.SerializeError, CrAlgebraError, ExtensionError) as exc:
        raise UsageError(f"{args.file}: {exc}") from exc
    report = Report(command="check-cralgebra")
    try:
        lh = derive_l_and_H(cr)
    except CrAlgebraError as exc:
        report.check("hypersurface-type", False, str(exc))
        return report, report.exit_code()
    report.info(
        "tangent-data",
        {
            "dim_l": len(lh.l_basis),
            "dim_H": len(lh.h_basis),
            "n": lh.n,
            "levi_signature": list(lh.levi_signature),
        },
    )
    verdict_inj, kdim = injectivity_shortcut(cr, lh)
    report.info("stabilizer-action", f"{verdict_inj.value} (kernel dimension {kdim})")

    if args.search:
        try:
            result = search_choices(cr)
        except CrAlgebraError as exc:
            raise UsageError(f"search: {exc}") from exc
        report.info(
            "constraint-system",
            {
                "primary": [repr(p) for p in result.primary_conditions],
                "primary_degrees": [p.degree() for p in result.primary_conditions],
                "parity": [repr(p) for p in result.parity_conditions],
            },
        )
        report.payload["canonical_choice_matrix"] = serialize.mat_to_json(
            result.canonical_matrix
        )
        verdict = result.verdict
    else:
        choice_doc = _load_json(args.choice)
        try:
            choice = serialize.choice_from_json(choice_doc)
        except serialize.SerializeError as exc:
            raise UsageError(f"{args.choice}: {exc}") from exc
        try:
            nu_ok = nu_automorphism_test(cr, choice)
        except CrAlgebraError as exc:
            raise UsageError(f"choice: {exc}") from exc
        report.check("parity-automorphism", nu_ok)
        if not nu_ok:
            report.info("verdict", "not-symmetric-for-choice")
            return report, report.exit_code()
        verdict = check_symmetric(cr, choice)

    report.info("verdict", verdict.kind.value)
    report.not_checked.extend(verdict.not_checked)
    if verdict.kind is SymmetricVerdictKind.SYMMETRIC:
        ext_doc = serialize.extension_to_json(verdict.extension)
        report.payload["extension"] = ext_doc
        report.check("normal-extension-emitted", True)
        if args.emit:
            Path(args.emit).write_text(serialize.dumps_canonical(ext_doc), encoding="utf-8")
            report.info("emitted-to", args.emit)
    else:
        report.check("symmetric", False, verdict.reason)
    return report, report.exit_code()


# ---------------------------------------------------------------------------
# builtin
# ---------------------------------------------------------------------------


def _lines_doc(suite: catalog.LineSuite) -> dict:
    return {
        "signature": serialize.signature_to_json(suite.sig),
        "cases": [
            {
                "label": case.label,
                "u": serialize.vector_to_json(case.u),
                "v": serialize.vector_to_json(case.v),
            }
            for case in suite.cases
        ],
    }


def _builtin_documents(name: str) -> dict[str, dict]:
    if name == "e2":
        ext = catalog.e2_extension()
        return {
            "e2.extension.json": serialize.extension_to_json(ext),
            "e2.cralgebra.json": serialize.cralgebra_to_json(catalog.e2_cralgebra()),
            "e2.choice.json": serialize.choice_to_json(catalog.e2_choice(), ext.sig.d),
        }
    if name == "sp11":
        return {"sp11.extension.json": serialize.extension_to_json(catalog.sp11_extension())}
    if name == "sp4r":
        return {"sp4r.extension.json": serialize.extension_to_json(catalog.sp4r_extension())}
    if name == "standard":
        return {
            "standard.extension.json": serialize.extension_to_json(
                catalog.standard_extension()
            )
        }
    if name == "exam61":
        return {"exam61.lines.json": _lines_doc(catalog.exam61_suite())}
    if name == "exam62":
        return {"exam62.lines.json": _lines_doc(catalog.exam62_suite())}
    raise UsageError(f"unknown builtin {name!r}; expected one of {', '.join(catalog.BUILTIN_NAMES)}")


def _verify_lines_suite(suite: catalog.LineSuite, report: Report) -> None:
    sig = suite.sig
    for case in suite.cases:
        pair = NullLinePair(case.u, case.v, sig)
        report.check(
            f"{case.label}: classification",
            classify_pair(pair, sig) is case.orbit,
        )
        for mode, expected in ((Mode.PRESERVE, case.preserve), (Mode.SWAP, case.swap)):
            got = find_symmetries(pair, mode, sig)
            if expected is None:
                report.check(f"{case.label}: {mode.value} empty", got.is_empty)
                continue
            report.check(
                f"{case.label}: {mode.value} solution set",
                got.same_set(expected),
                f"dimension {got.dim}",
            )
            sound = True
            for point in got.points():
                s = symmetry_from_coords(point, sig)
                if mode is Mode.PRESERVE:
                    sound = sound and line_image_matches(s, case.u, case.u)
                    sound = sound and line_image_matches(s, case.v, case.v)
                else:
                    sound = sound and line_image_matches(s, case.u, case.v)
                    sound = sound and line_image_matches(s, case.v, case.u)
            report.check(f"{case.label}: {mode.value} soundness", sound)


def _verify_builtin(name: str, report: Report, seed: int) -> None:
    if name == "e2":
        ext = catalog.e2_extension()
        _extension_report(ext, report)
        report.check("non-flat", not is_flat(ext))
        expected = catalog.e2_expected_curvature()
        tau = curvature(ext)
        match = all(tau.values[k].mat == m for k, m in expected.items()) and all(
            v.is_zero() for k, v in tau.values.items() if k not in expected
        )
        report.check("curvature-table-exact", match)
        skeleton = symmetric_skeleton(ext.k, ext.sig)
        solved = solve_normalization(skeleton)
        report.check(
            "normalization-reproduces-alpha",
            all(a.mat == b.mat for a, b in zip(solved.alpha, ext.alpha)),
        )
        verdict = check_symmetric(catalog.e2_cralgebra(), catalog.e2_choice())
        report.check(
            "pipeline-reproduces-extension",
            verdict.kind is SymmetricVerdictKind.SYMMETRIC
            and serialize.dumps_canonical(serialize.extension_to_json(verdict.extension))
            == serialize.dumps_canonical(serialize.extension_to_json(ext)),
        )
        ok, params = verify_variety_membership(catalog.e2_variety_point())
        report.check(
            "variety-membership",
            ok and [str(p) for p in params] == ["1", "1", "0", "0", "0", "0"],
        )
    elif name in ("sp11", "sp4r"):
        ext = catalog.sp11_extension() if name == "sp11" else catalog.sp4r_extension()
        _extension_report(ext, report)
        report.check("span-dimension-10", ext.k.dim == 10)
        report.check("flat", is_flat(ext))
    elif name == "standard":
        ext = catalog.standard_extension()
        _extension_report(ext, report)
        report.check("flat", is_flat(ext))
        failures = run_symmetry_property_suite(ext.sig, count=20, seed=seed)
        report.check(
            "origin-symmetry-property-suite",
            not failures,
            "; ".join(failures[:3]),
        )
    elif name == "exam61":
        _verify_lines_suite(catalog.exam61_suite(), report)
    elif name == "exam62":
        _verify_lines_suite(catalog.exam62_suite(), report)


def cmd_builtin(args: argparse.Namespace, fmt: str) -> tuple[Report, int]:
    report = Report(command=f"builtin {args.name}")
    docs = _builtin_documents(args.name)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for fname, doc in sorted(docs.items()):
        path = out_dir / fname
        path.write_text(serialize.dumps_canonical(doc), encoding="utf-8")
        written.append(str(path))
    report.info("emitted", written)
    if args.verify:
        _verify_builtin(args.name, report, args.seed)
    return report, report.exit_code()


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crsym",
        description="Exact computations for symmetric CR geometries of hypersurface type.",
    )
    parser.add_argument(
        "--format", choices=("text", "machine"), default="text", help="report format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fs = sub.add_parser("find-symmetries", help="origin symmetries constrained by two null lines")
    fs.add_argument("--p", type=int, required=True)
    fs.add_argument("--q", type=int, required=True)
    fs.add_argument("--d", type=int, default=2, help="square-free surd (default 2)")
    fs.add_argument("--u", required=True, help="JSON vector of scalar 4-arrays")
    fs.add_argument("--v", required=True, help="JSON vector of scalar 4-arrays")
    fs.add_argument("--mode", choices=("preserve", "swap", "any"), default="any")

    ce = sub.add_parser("check-extension", help="validate an extension file")
    ce.add_argument("file")

    cc = sub.add_parser("check-cralgebra", help="run the CR-algebra pipeline")
    cc.add_argument("file")
    group = cc.add_mutually_exclusive_group(required=True)
    group.add_argument("--choice", help="choice file (representatives + complement)")
    group.add_argument("--search", action="store_true", help="bounded search (dim k = 3)")
    cc.add_argument("--emit", help="write the emitted extension to this path")

    bi = sub.add_parser("builtin", help="emit a built-in model; --verify reruns its checks")
    bi.add_argument("name", choices=catalog.BUILTIN_NAMES)
    bi.add_argument("--verify", action="store_true")
    bi.add_argument("--out", default=".", help="output directory for data files")
    bi.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format
    handlers = {
        "find-symmetries": cmd_find_symmetries,
        "check-extension": cmd_check_extension,
        "check-cralgebra": cmd_check_cralgebra,
        "builtin": cmd_builtin,
    }
    try:
        report, code = handlers[args.command](args, fmt)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (SualgError, SymmetryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    sys.stdout.write(render(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
