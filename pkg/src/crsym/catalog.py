"""Built-in regression models.

* ``e2``: the normal extension of the Euclidean-plane isometry algebra into
  su(1, 2), the basic non-flat symmetric example; ships with its CR-algebra
  presentation and the distinguished tangent/transversal choice.
* ``sp11`` / ``sp4r``: ten-dimensional subalgebras of su(2, 2) realizing the
  two flat families (compact and split symplectic real forms acting on the
  projective quadric); the inclusions are flat normal extensions.
* ``standard``: the identity inclusion of su(2, 2) with the parabolic as
  stabilizer.
* ``exam61`` / ``exam62``: null-line pair configurations at signature (2, 2)
  with their exact symmetry solution sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Mat, rank, solve_affine
from .scalars import Scalar
from .sualg import Signature, SuElement, su_basis
from .symmetries import OrbitCase
from .extensions import Extension, ExtensionError, LieAlg
from .cralgebra import BasisChoice, CrAlgebra

__all__ = [
    "BUILTIN_NAMES",
    "LineCase",
    "LineSuite",
    "e2_algebra",
    "e2_extension",
    "e2_expected_curvature",
    "e2_standard_basis_algebra",
    "e2_cralgebra",
    "e2_choice",
    "e2_variety_point",
    "sp11_extension",
    "sp4r_extension",
    "standard_extension",
    "standard_basis_names",
    "exam61_suite",
    "exam62_suite",
]

BUILTIN_NAMES = ("e2", "sp11", "sp4r", "standard", "exam61", "exam62")


def _sc(c0=0, c1=0, c2=0, c3=0) -> Scalar:
    return Scalar(Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))


def _r(x) -> Scalar:
    return Scalar.rational(Fraction(x))


def _i(x) -> Scalar:
    return Scalar(0, Fraction(x))


# ---------------------------------------------------------------------------
# e2
# ---------------------------------------------------------------------------


def e2_algebra() -> LieAlg:
    """Isometries of the Euclidean plane in the adapted basis (x, X1, X2):
    [x, X1] = -1/2 X2, [x, X2] = 0, [X1, X2] = -2 x."""
    return LieAlg.from_table(
        ("x", "X1", "X2"),
        {
            (0, 1): [0, 0, Fraction(-1, 2)],
            (0, 2): [0, 0, 0],
            (1, 2): [-2, 0, 0],
        },
    )


def e2_extension() -> Extension:
    sig = Signature(0, 1)
    alpha_x = Mat([
        [_i("1/16"), _r(0), _i("-15/256")],
        [_r(0), _i("-1/8"), _r(0)],
        [_i(1), _r(0), _i("1/16")],
    ])
    alpha_x1 = Mat([
        [_r(0), _r("-5/16"), _r(0)],
        [_r(1), _r(0), _r("5/16")],
        [_r(0), _r(-1), _r(0)],
    ])
    alpha_x2 = Mat([
        [_r(0), _i("-3/16"), _r(0)],
        [_i(1), _r(0), _i("-3/16")],
        [_r(0), _i(1), _r(0)],
    ])
    return Extension(
        e2_algebra(),
        (),
        sig,
        tuple(SuElement(m, sig) for m in (alpha_x, alpha_x1, alpha_x2)),
    )


def e2_expected_curvature() -> dict[tuple[int, int], Mat]:
    """Nonzero curvature table entries of the e2 extension."""
    z = _r(0)
    return {
        (0, 1): Mat([[z, _i("-3/32"), z], [z, z, _i("-3/32")], [z, z, z]]),
        (0, 2): Mat([[z, _r("3/32"), z], [z, z, _r("-3/32")], [z, z, z]]),
    }


def e2_standard_basis_algebra() -> LieAlg:
    """Euclidean-plane isometries in the standard basis (two translations
    t1, t2 and the rotation r): [r, t1] = t2, [r, t2] = -t1."""
    return LieAlg.from_table(
        ("t1", "t2", "r"),
        {
            (0, 1): [0, 0, 0],
            (0, 2): [0, -1, 0],
            (1, 2): [1, 0, 0],
        },
    )


def e2_cralgebra() -> CrAlgebra:
    zero, one = _r(0), _r(1)
    return CrAlgebra(
        e2_standard_basis_algebra(),
        (((zero, zero, one), (zero, one, zero)),),
    )


def e2_choice() -> BasisChoice:
    zero, one = _r(0), _r(1)
    return BasisChoice(
        representatives=((zero, zero, one), (zero, one, zero)),
        complement=(_r("1/2"), zero, zero),
    )


def e2_variety_point() -> Mat:
    z = _r(0)
    return Mat([[_r("1/2"), z, z], [z, z, _r(1)], [z, _r(1), z]])


# ---------------------------------------------------------------------------
# sp11 / sp4r: ten-dimensional flat subalgebras of su(2, 2)
# ---------------------------------------------------------------------------

_GEN_ORDER = ("x", "X1", "X2", "X3", "X4", "l1", "l2", "l3", "l4", "l5")


def _sp11_generators() -> dict[str, Mat]:
    z = _r(0)
    h = Fraction(1, 2)
    return {
        "l1": Mat([[_r(1), z, z, z], [z, z, _r(-1), z], [z, _r(-1), z, z], [z, z, z, _r(-1)]]),
        "l2": Mat([[_i(1), z, z, z], [z, _i(-1), z, z], [z, z, _i(-1), z], [z, z, z, _i(1)]]),
        "l3": Mat([[z, z, z, _i(1)], [z, _i(-h), _i(-h), z], [z, _i(h), _i(h), z], [z, z, z, z]]),
        "l4": Mat([[z, _r(1), _r(1), z], [z, z, z, _r(-1)], [z, z, z, _r(1)], [z, z, z, z]]),
        "l5": Mat([[z, _i(1), _i(1), z], [z, z, z, _i(1)], [z, z, z, _i(-1)], [z, z, z, z]]),
        "x": Mat([[z, z, z, _i(1)], [z, _i(-1), z, z], [z, z, _i(1), z], [_i(1), z, z, z]]),
        "X1": Mat([[z, _r(-1), z, z], [_r(1), z, z, _r(1)], [z, z, z, z], [z, _r(-1), z, z]]),
        "X2": Mat([[z, _i(1), z, z], [_i(1), z, z, _i(1)], [z, z, z, z], [z, _i(1), z, z]]),
        "X3": Mat([[z, z, _r(-1), z], [z, z, z, z], [_r(1), z, z, _r(-1)], [z, z, _r(1), z]]),
        "X4": Mat([[z, z, _i(1), z], [z, z, z, z], [_i(1), z, z, _i(-1)], [z, z, _i(-1), z]]),
    }


def _sp4r_generators() -> dict[str, Mat]:
    z = _r(0)
    h = Fraction(1, 2)
    return {
        "l1": Mat([[_r(1), z, z, z], [z, z, _r(1), z], [z, _r(1), z, z], [z, z, z, _r(-1)]]),
        "l2": Mat([[_i(1), z, z, z], [z, _i(-1), z, z], [z, z, _i(-1), z], [z, z, z, _i(1)]]),
        "l3": Mat([[z, z, z, _i(1)], [z, _i(h), _i(-h), z], [z, _i(h), _i(-h), z], [z, z, z, z]]),
        "l4": Mat([[z, _r(1), _r(-1), z], [z, z, z, _r(-1)], [z, z, z, _r(-1)], [z, z, z, z]]),
        "l5": Mat([[z, _i(1), _i(-1), z], [z, z, z, _i(1)], [z, z, z, _i(1)], [z, z, z, z]]),
        "x": Mat([[z, z, z, _i(1)], [z, _i(1), z, z], [z, z, _i(-1), z], [_i(1), z, z, z]]),
        "X1": Mat([[z, _r(1), z, z], [_r(1), z, z, _r(-1)], [z, z, z, z], [z, _r(-1), z, z]]),
        "X2": Mat([[z, _i(-1), z, z], [_i(1), z, z, _i(-1)], [z, z, z, z], [z, _i(1), z, z]]),
        "X3": Mat([[z, z, _r(1), z], [z, z, z, z], [_r(1), z, z, _r(1)], [z, z, _r(1), z]]),
        "X4": Mat([[z, z, _i(-1), z], [z, z, z, z], [_i(1), z, z, _i(1)], [z, z, _i(-1), z]]),
    }


def _flatten_real(m: Mat) -> list[Scalar]:
    out = []
    for j in range(m.rows):
        for k in range(m.cols):
            e = m[j, k]
            out.append(e.real())
            out.append(e.imag())
    return out


def _structure_from_matrices(names: Sequence[str], mats: Sequence[Mat], d: int = 2) -> LieAlg:
    """Structure constants of a matrix Lie algebra given by a basis; raises
    if the span is not bracket-closed."""
    from .linalg import _rref, bracket, invert

    m = len(mats)
    flat = [_flatten_real(mat) for mat in mats]
    ncoords = len(flat[0])
    _, pivots = _rref([list(row) for row in flat])
    if len(pivots) != m:
        raise ExtensionError("generators are linearly dependent")
    # coordinates via the invertible pivot-column minor, then full verification
    minor = Mat([[flat[g][pc] for g in range(m)] for pc in pivots], d=d)
    minor_inv = invert(minor)
    table = {}
    for i in range(m):
        for j in range(i + 1, m):
            target = _flatten_real(bracket(mats[i], mats[j]))
            coords = [
                sum((minor_inv[g, r] * target[pivots[r]] for r in range(m)), _r(0))
                for g in range(m)
            ]
            for pos in range(ncoords):
                acc = _r(0)
                for g in range(m):
                    if not coords[g].is_zero():
                        acc = acc + coords[g] * flat[g][pos]
                if acc != target[pos]:
                    raise ExtensionError(
                        f"bracket [{names[i]}, {names[j]}] escapes the span"
                    )
            for c in coords:
                if not c.is_real():
                    raise ExtensionError("structure constants came out complex")
            table[(i, j)] = coords
    return LieAlg.from_table(names, table, d=d)


def _matrix_subalgebra_extension(gens: dict[str, Mat]) -> Extension:
    sig = Signature(1, 1)
    mats = [gens[name] for name in _GEN_ORDER]
    alg = _structure_from_matrices(_GEN_ORDER, mats)
    alpha = tuple(SuElement(m, sig) for m in mats)
    l_indices = tuple(i for i, name in enumerate(_GEN_ORDER) if name.startswith("l"))
    return Extension(alg, l_indices, sig, alpha)


def sp11_extension() -> Extension:
    return _matrix_subalgebra_extension(_sp11_generators())


def sp4r_extension() -> Extension:
    return _matrix_subalgebra_extension(_sp4r_generators())


# ---------------------------------------------------------------------------
# standard inclusion
# ---------------------------------------------------------------------------


def standard_basis_names(sig: Signature) -> list[str]:
    n = sig.n
    names = ["x"]
    names += [f"X{s + 1}" for s in range(2 * n)]
    names += ["gr"]
    names += [f"d{k + 1}" for k in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            names += [f"r{j + 1}{k + 1}", f"s{j + 1}{k + 1}"]
    names += [f"Z{s + 1}" for s in range(2 * n)]
    names += ["z"]
    return names


def standard_extension(sig: Signature | None = None) -> Extension:
    """Identity inclusion of su(p+1, q+1), stabilizer = the parabolic."""
    sig = sig or Signature(1, 1)
    basis = su_basis(sig)
    names = standard_basis_names(sig)
    alg = _structure_from_matrices(names, [b.mat for b in basis], d=sig.d)
    n = sig.n
    l_indices = tuple(range(2 * n + 1, len(basis)))
    return Extension(alg, l_indices, sig, tuple(basis))


# ---------------------------------------------------------------------------
# null-line pair suites at signature (2, 2)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineCase:
    """One (u, v) configuration with the exact expected solution sets over
    the solver coordinates (a_1..a_4, b_1..b_4, z); ``None`` means empty."""

    label: str
    u: tuple[Scalar, ...]
    v: tuple[Scalar, ...]
    orbit: OrbitCase
    preserve: "AffineSpaceLike"
    swap: "AffineSpaceLike"


AffineSpaceLike = "object"


@dataclass(frozen=True)
class LineSuite:
    name: str
    sig: Signature
    cases: tuple[LineCase, ...]


def _vec(*entries) -> tuple[Scalar, ...]:
    return tuple(e if isinstance(e, Scalar) else _r(e) for e in entries)


def _constraint_space(equations: list[tuple[list[Scalar], Scalar]]):
    from .linalg import AffineSpace

    space = solve_affine(equations, 9)
    assert not space.is_empty
    return space


def _coeff_eq(coeffs: dict[int, int], rhs) -> tuple[list[Scalar], Scalar]:
    row = [_r(0)] * 9
    for j, c in coeffs.items():
        row[j] = _r(c)
    return (row, rhs if isinstance(rhs, Scalar) else _r(rhs))


def exam61_suite() -> LineSuite:
    """The four isotropic-pair orbits with their exact symmetry sets.

    Coordinates: a_k = Re Z_k at 0..3, b_k = Im Z_k at 4..7, z at 8.
    """
    from .linalg import AffineSpace

    sig = Signature(2, 2)
    i1 = _i(1)
    rt2 = Scalar.sqrt_d()
    zero = _r(0)

    # unique swap point of the first orbit: Z = (-i rt2, 0, 0, +i rt2), z = 0
    case1_point = AffineSpace.point(
        (zero, zero, zero, zero, -rt2, zero, zero, rt2, zero)
    )
    case1 = LineCase(
        "both-lines-meet-origin-pairing",
        _vec(i1, rt2, 0, 0, 0, -i1),
        _vec(i1, 0, 0, 0, -rt2, i1),
        OrbitCase.CASE1,
        preserve=None,
        swap=case1_point,
    )
    case2 = LineCase(
        "one-line-orthogonal",
        _vec(0, 1, 0, 0, 1, 0),
        _vec(0, 0, 0, 0, 0, i1),
        OrbitCase.CASE2,
        preserve=AffineSpace.point(tuple([zero] * 9)),
        swap=None,
    )
    case3 = LineCase(
        "origin-inside-span",
        _vec(0, 1, 0, 0, 1, 0),
        _vec(1, 1, 0, 0, 1, 0),
        OrbitCase.CASE3,
        preserve=None,
        swap=_constraint_space(
            [_coeff_eq({0: 1, 3: 1}, -1), _coeff_eq({4: 1, 7: 1}, 0)]
        ),
    )
    case4 = LineCase(
        "origin-outside-span",
        _vec(0, 1, 0, 0, 1, 0),
        _vec(0, 0, 1, 1, 0, 0),
        OrbitCase.CASE4,
        preserve=_constraint_space(
            [
                _coeff_eq({0: 1, 3: 1}, 0),
                _coeff_eq({4: 1, 7: 1}, 0),
                _coeff_eq({1: 1, 2: 1}, 0),
                _coeff_eq({5: 1, 6: 1}, 0),
            ]
        ),
        swap=None,
    )
    return LineSuite("exam61", sig, (case1, case2, case3, case4))


def exam62_suite() -> LineSuite:
    """A non-isotropic pair: no symmetry preserves or swaps the lines."""
    sig = Signature(2, 2)
    one_plus_i = _sc(1, 1)
    rt2 = Scalar.sqrt_d()
    case = LineCase(
        "non-isotropic-pair",
        _vec(0, 0, 0, 0, 0, 1),
        _vec(1, rt2, 0, 0, one_plus_i, 0),
        OrbitCase.NON_ISOTROPIC_PAIR,
        preserve=None,
        swap=None,
    )
    return LineSuite("exam62", sig, (case,))
