"""Symmetries of the standard model fixing the origin line <e_0>.

Every such symmetry is the projective class of

    s_{Z,z} = [[-1, -Z, iz + (1/2) Z I Z*], [0, E, -I Z*], [0, 0, -1]]

for Z in C^n* and real z.  ``find_symmetries`` enumerates the exact set of
(Z, z) whose symmetry preserves or swaps two removed null lines <u>, <v>.

The solver exploits two structural facts.  The last coordinate of s.u is the
constant -u_{n+1}, so the projective scale against a target w is pinned
whenever w_{n+1} != 0, and the middle rows then determine Z outright.  When
u_{n+1} = 0 the quadratic Z I Z* term and z both drop out of s.u and every
constraint is affine in (Re Z, Im Z).  Each branch is decided by input data,
never by case analysis on unknowns, so the union is a single affine set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .linalg import AffineSpace, Mat, conj_transpose, rank, solve_affine
from .scalars import Scalar
from .sualg import (
    GradedParts,
    Signature,
    assemble,
    decompose,
    form_signs,
    hermitian_form_matrix,
    m_form,
)

__all__ = [
    "SymmetryMatrix",
    "NullLinePair",
    "Mode",
    "OrbitCase",
    "SymmetryError",
    "make_symmetry",
    "is_involutive",
    "classify_pair",
    "find_symmetries",
    "line_image_matches",
    "symmetry_from_coords",
    "run_symmetry_property_suite",
]


class SymmetryError(ValueError):
    pass


class Mode(Enum):
    PRESERVE = "preserve"
    SWAP = "swap"


class OrbitCase(Enum):
    NON_ISOTROPIC_PAIR = "non-isotropic-pair"
    CASE1 = "both-lines-nonorthogonal-to-origin"
    CASE2 = "exactly-one-line-orthogonal-to-origin"
    CASE3 = "both-orthogonal-origin-inside-span"
    CASE4 = "both-orthogonal-origin-outside-span"


@dataclass(frozen=True)
class SymmetryMatrix:
    Z: tuple[Scalar, ...]
    z: Scalar
    sig: Signature
    mat: Mat


def _zero(sig: Signature) -> Scalar:
    return Scalar.rational(0, d=sig.d)


def make_symmetry(Z: Sequence[Scalar], z: Scalar, sig: Signature) -> SymmetryMatrix:
    """Build s_{Z,z} and verify it lies in the m-preserving group with the
    required tangent behaviour; a failure here means a broken form convention,
    so it aborts rather than returning a verdict."""
    n, d = sig.n, sig.d
    if len(Z) != n:
        raise SymmetryError(f"Z must have length n = {n}")
    if not z.is_real():
        raise SymmetryError("z must be real")
    signs = form_signs(sig)
    i_unit = Scalar.i(d=d)
    half = Scalar.rational("1/2", d=d)
    zizstar = _zero(sig)
    for k in range(n):
        zizstar = zizstar + Scalar.rational(signs[k], d=d) * Z[k] * Z[k].conj()
    size = n + 2
    m = [[_zero(sig)] * size for _ in range(size)]
    m[0][0] = Scalar.rational(-1, d=d)
    for k in range(n):
        m[0][1 + k] = -Z[k]
    m[0][n + 1] = i_unit * z + half * zizstar
    for j in range(n):
        m[1 + j][1 + j] = Scalar.rational(1, d=d)
        m[1 + j][n + 1] = -(Scalar.rational(signs[j], d=d) * Z[j].conj())
    m[n + 1][n + 1] = Scalar.rational(-1, d=d)
    mat = Mat(m, d=d)

    h = hermitian_form_matrix(sig)
    if conj_transpose(mat) * h * mat != h:
        raise SymmetryError("form convention broken: s* H s != H")
    # tangent action: Ad(s) negates the g_{-1} class and fixes the g_{-2} class
    one = Scalar.rational(1, d=d)
    sinv = invert_symmetry(mat, z, sig)
    for probe_k in range(n):
        x_vec = [_zero(sig)] * n
        x_vec[probe_k] = one
        elem = assemble(GradedParts(sig, X=x_vec))
        got = decompose(mat * elem.mat * sinv, sig)
        if list(got.X) != [-c for c in x_vec]:
            raise SymmetryError("form convention broken: tangent action is not -id on H")
    return SymmetryMatrix(tuple(Z), z, sig, mat)


def invert_symmetry(mat: Mat, z: Scalar, sig: Signature) -> Mat:
    """s^{-1} = s - 2iz E_{0,n+1}: follows from s^2 = E - 2iz E_{0,n+1}."""
    n, d = sig.n, sig.d
    two_iz = Scalar.rational(2, d=d) * Scalar.i(d=d) * z
    return mat - Mat.unit(n + 2, 0, n + 1, two_iz, d=d)


def is_involutive(s: SymmetryMatrix) -> bool:
    """True iff s . s is a scalar multiple of the identity (iff z = 0)."""
    sq = s.mat * s.mat
    pivot = sq[0, 0]
    n = s.sig.n
    ident = Mat.identity(n + 2, d=s.sig.d)
    return sq == ident.scale(pivot)


def line_image_matches(s: SymmetryMatrix, source: Sequence[Scalar], target: Sequence[Scalar]) -> bool:
    """Whether s maps the line <source> onto <target>: all 2x2 minors of
    [s.source | target] vanish."""
    image = [_dot_row(s.mat, j, source) for j in range(s.mat.rows)]
    size = len(image)
    for j in range(size):
        for k in range(j + 1, size):
            if not (image[j] * target[k] - image[k] * target[j]).is_zero():
                return False
    return True


def _dot_row(mat: Mat, j: int, vec: Sequence[Scalar]) -> Scalar:
    acc = Scalar.rational(0, d=mat.d)
    for k in range(mat.cols):
        if mat[j, k].is_zero() or vec[k].is_zero():
            continue
        acc = acc + mat[j, k] * vec[k]
    return acc


@dataclass(frozen=True)
class NullLinePair:
    """Two m-null vectors spanning distinct lines, both different from <e_0>."""

    u: tuple[Scalar, ...]
    v: tuple[Scalar, ...]
    sig: Signature

    def __post_init__(self):
        sig = self.sig
        for name, vec in (("u", self.u), ("v", self.v)):
            if len(vec) != sig.size:
                raise SymmetryError(f"{name} must have length {sig.size}")
            if all(c.is_zero() for c in vec):
                raise SymmetryError(f"{name} must be nonzero")
            if not m_form(vec, vec, sig).is_zero():
                raise SymmetryError(f"{name} is not m-null")
            if all(c.is_zero() for c in vec[1:]):
                raise SymmetryError(f"{name} spans the removed base point line <e_0>")
        if _proportional(self.u, self.v):
            raise SymmetryError("u and v must span distinct lines")


def _proportional(u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
    size = len(u)
    for j in range(size):
        for k in range(j + 1, size):
            if not (u[j] * v[k] - u[k] * v[j]).is_zero():
                return False
    return True


def classify_pair(pair: NullLinePair, sig: Signature) -> OrbitCase:
    """Orbit type of (<u>, <v>) under the stabilizer of the two lines."""
    u, v = pair.u, pair.v
    if not m_form(u, v, sig).is_zero():
        return OrbitCase.NON_ISOTROPIC_PAIR
    # m(e_0, w) = conj(w_{n+1})
    mu = u[sig.n + 1]
    mv = v[sig.n + 1]
    if not mu.is_zero() and not mv.is_zero():
        return OrbitCase.CASE1
    if mu.is_zero() != mv.is_zero():
        return OrbitCase.CASE2
    # both orthogonal; decide e_0 in <u, v> (rank over F equals rank over C)
    e0 = [Scalar.rational(1, d=sig.d)] + [_zero(sig)] * (sig.n + 1)
    if rank([list(u), list(v), e0]) == rank([list(u), list(v)]):
        return OrbitCase.CASE3
    return OrbitCase.CASE4


# ---------------------------------------------------------------------------
# The solver
# ---------------------------------------------------------------------------
#
# Real unknowns, in order: a_1..a_n (Re Z), b_1..b_n (Im Z), z.


class _AffineComplex:
    """c + sum_j (coeff_j * t_j) with complex Scalar coefficients over the
    real unknowns t_j; supports splitting into real equations."""

    __slots__ = ("const", "lin", "d")

    def __init__(self, const: Scalar, lin: dict[int, Scalar], d: int):
        self.const = const
        self.lin = {j: c for j, c in lin.items() if not c.is_zero()}
        self.d = d

    def scaled(self, s: Scalar) -> "_AffineComplex":
        return _AffineComplex(s * self.const, {j: s * c for j, c in self.lin.items()}, self.d)

    def plus(self, other: "_AffineComplex") -> "_AffineComplex":
        lin = dict(self.lin)
        for j, c in other.lin.items():
            lin[j] = lin.get(j, Scalar.rational(0, d=self.d)) + c
        return _AffineComplex(self.const + other.const, lin, self.d)

    def real_rows(self, ambient: int) -> list[tuple[list[Scalar], Scalar]]:
        """Equations (this == 0) split into real and imaginary parts."""
        zero = Scalar.rational(0, d=self.d)
        rows = []
        for take in ("real", "imag"):
            coeffs = [zero] * ambient
            for j, c in self.lin.items():
                coeffs[j] = getattr(c, take)()
            rhs = -getattr(self.const, take)()
            if all(c.is_zero() for c in coeffs) and rhs.is_zero():
                continue
            rows.append((coeffs, rhs))
        return rows


def _const_ac(value: Scalar, d: int) -> _AffineComplex:
    return _AffineComplex(value, {}, d)


def find_symmetries(pair: NullLinePair, mode: Mode, sig: Signature) -> AffineSpace:
    """Exact affine solution set in R^{2n+1} = (a_1..a_n, b_1..b_n, z) of the
    requested line conditions, Z_k = a_k + i b_k."""
    n, d = sig.n, sig.d
    ambient = 2 * n + 1
    if mode is Mode.PRESERVE:
        pairings = [(pair.u, pair.u), (pair.v, pair.v)]
    else:
        pairings = [(pair.u, pair.v), (pair.v, pair.u)]

    signs = form_signs(sig)
    zero = _zero(sig)
    one = Scalar.rational(1, d=d)
    i_unit = Scalar.i(d=d)
    rows: list[tuple[list[Scalar], Scalar]] = []
    deferred: list[tuple[Sequence[Scalar], Sequence[Scalar], Scalar]] = []

    def conj_z(k: int) -> _AffineComplex:
        # conj(Z_k) = a_k - i b_k
        return _AffineComplex(zero, {k: one, n + k: -i_unit}, d)

    def z_lin(k: int) -> _AffineComplex:
        # Z_k = a_k + i b_k
        return _AffineComplex(zero, {k: one, n + k: i_unit}, d)

    for source, target in pairings:
        s_last = -source[n + 1]
        t_last = target[n + 1]
        if not s_last.is_zero():
            if t_last.is_zero():
                return AffineSpace.empty(ambient)
            lam = s_last / t_last
            # middle rows: u_k - sign_k conj(Z_k) u_{n+1} = lam * w_k
            for k in range(n):
                coeff = -(Scalar.rational(signs[k], d=d) * source[n + 1])
                expr = conj_z(k).scaled(coeff).plus(
                    _const_ac(source[1 + k] - lam * target[1 + k], d)
                )
                rows.extend(expr.real_rows(ambient))
            deferred.append((source, target, lam))
        else:
            if not t_last.is_zero():
                return AffineSpace.empty(ambient)
            # s.u = (-u_0 - Z u_mid, u_mid, 0): middle coordinates are constants
            # proportionality of the middle parts is a constant condition
            if not _proportional(source[1 : n + 1], target[1 : n + 1]):
                return AffineSpace.empty(ambient)
            pivot = next(
                (k for k in range(n) if not target[1 + k].is_zero()),
                None,
            )
            if pivot is None:
                # target = t_0 e_0 is excluded by NullLinePair, defensive only
                return AffineSpace.empty(ambient)
            lam = source[1 + pivot] / target[1 + pivot]
            if lam.is_zero():
                return AffineSpace.empty(ambient)
            # row 0: -u_0 - sum_k Z_k u_k = lam w_0 (z and the quadratic drop out)
            expr = _const_ac(-source[0] - lam * target[0], d)
            for k in range(n):
                if source[1 + k].is_zero():
                    continue
                expr = expr.plus(z_lin(k).scaled(-source[1 + k]))
            rows.extend(expr.real_rows(ambient))

    stage_one = solve_affine(rows, ambient, d=d)
    if stage_one.is_empty:
        return stage_one
    if not deferred:
        return stage_one

    # every deferred pairing pins Z completely through its middle rows
    for direction in stage_one.directions:
        if any(not c.is_zero() for c in direction[: 2 * n]):
            raise SymmetryError("solver invariant broken: Z not pinned by a pinning pairing")
    z_coords = [stage_one.particular[k] + i_unit * stage_one.particular[n + k] for k in range(n)]
    quad = zero
    for k in range(n):
        quad = quad + Scalar.rational(signs[k], d=d) * z_coords[k] * z_coords[k].conj()
    half = Scalar.rational("1/2", d=d)
    for source, target, lam in deferred:
        # row 0: -u_0 - Z u_mid + (iz + 1/2 Z I Z*) u_{n+1} = lam w_0
        const = -source[0] + half * quad * source[n + 1] - lam * target[0]
        for k in range(n):
            const = const + (-z_coords[k]) * source[1 + k]
        expr = _AffineComplex(const, {2 * n: i_unit * source[n + 1]}, d)
        rows.extend(expr.real_rows(ambient))
    return solve_affine(rows, ambient, d=d)


def symmetry_from_coords(coords: Sequence[Scalar], sig: Signature) -> SymmetryMatrix:
    """Interpret a solver point (a_1..a_n, b_1..b_n, z) as a symmetry."""
    n = sig.n
    i_unit = Scalar.i(d=sig.d)
    Z = [coords[k] + i_unit * coords[n + k] for k in range(n)]
    return make_symmetry(Z, coords[2 * n], sig)


def run_symmetry_property_suite(sig: Signature, count: int = 20, seed: int = 0) -> list[str]:
    """Seeded randomized checks of the origin symmetries; returns failures.

    Per sample (Z, z): the matrix preserves the form and acts by -id on the
    tangent classes (validated inside make_symmetry), is_involutive agrees
    with z = 0, and the square is the unipotent matrix with top-right -2iz.
    """
    import random
    from fractions import Fraction

    rng = random.Random(seed)
    n, d = sig.n, sig.d
    i_unit = Scalar.i(d=d)
    failures: list[str] = []

    def rand_frac() -> Fraction:
        return Fraction(rng.randint(-8, 8), rng.randint(1, 6))

    for sample in range(count):
        Z = [
            Scalar(rand_frac(), rand_frac(), d=d)
            for _ in range(n)
        ]
        z = Scalar.rational(rand_frac(), d=d) if sample % 2 else Scalar.rational(0, d=d)
        try:
            s = make_symmetry(Z, z, sig)
        except SymmetryError as exc:
            failures.append(f"sample {sample}: construction failed: {exc}")
            continue
        if is_involutive(s) != z.is_zero():
            failures.append(f"sample {sample}: involutivity does not match z = 0")
        expected_sq = Mat.identity(n + 2, d=d) - Mat.unit(
            n + 2, 0, n + 1, Scalar.rational(2, d=d) * i_unit * z, d=d
        )
        if s.mat * s.mat != expected_sq:
            failures.append(f"sample {sample}: square is not the expected unipotent matrix")
    return failures
