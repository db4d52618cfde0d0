"""The graded model su(p+1, q+1) in (1, n, 1)-block form.

Elements are (n+2) x (n+2) matrices M with trace(M) = 0 and
M* H + H M = 0, where H is the matrix of the pseudo-Hermitian form

    m(u, v) = u_0 conj(v_{n+1}) + u_{n+1} conj(v_0)
              + sum_{k=1}^{q} u_k conj(v_k) - sum_{k=q+1}^{n} u_k conj(v_k).

The middle-block signs (+1 on the first q coordinates, -1 on the last p) are
forced: with the opposite assignment the shipped non-flat example matrices
fail membership and the real Levi form comes out with signature (2q, 2p)
instead of (2p, 2q).  See NOTES in the repository root for the exact anchor.

Members decompose into five graded blocks

    [[a, Z, iz], [X, A, -I Z*], [ix, -X* I, -conj(a)]]

with x real (grade -2), X in C^n (grade -1), (a, A) in csu(p, q) (grade 0,
meaning a + tr(A) - conj(a) = 0 and A* I + I A = 0), Z in C^n* (grade 1) and
z real (grade 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import LinalgError, Mat, bracket, entrywise_star, invert, symmetric_signature
from .scalars import Entry, Poly, Scalar, entry_conj

__all__ = [
    "Signature",
    "GradedParts",
    "SuElement",
    "SualgError",
    "hermitian_form_matrix",
    "form_signs",
    "m_form",
    "assemble",
    "grade_project",
    "grading_element",
    "trace_form",
    "levi_form",
    "u_pq_complement_split",
    "g_minus_basis",
    "g_plus_basis",
    "g_zero_basis",
    "su_basis",
    "dual_plus_basis",
    "gminus_coords",
]


class SualgError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    """Levi-form signature (p, q) with p <= q; n = p + q >= 1."""

    p: int
    q: int
    d: int = 2

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p > self.q:
            raise SualgError(f"signature requires 0 <= p <= q, got ({self.p}, {self.q})")
        if self.n < 1:
            raise SualgError("signature requires n = p + q >= 1")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def size(self) -> int:
        return self.n + 2


def form_signs(sig: Signature) -> list[int]:
    """Middle-block signs: +1 on the first q coordinates, -1 on the last p."""
    return [1] * sig.q + [-1] * sig.p


def hermitian_form_matrix(sig: Signature) -> Mat:
    n, d = sig.n, sig.d
    m = [[Scalar.rational(0, d=d) for _ in range(n + 2)] for _ in range(n + 2)]
    one = Scalar.rational(1, d=d)
    m[0][n + 1] = one
    m[n + 1][0] = one
    for k, s in enumerate(form_signs(sig), start=1):
        m[k][k] = Scalar.rational(s, d=d)
    return Mat(m, d=d)


def m_form(u: Sequence[Scalar], v: Sequence[Scalar], sig: Signature) -> Scalar:
    """m(u, v) = sum_{jk} H_{jk} u_j conj(v_k)."""
    if len(u) != sig.size or len(v) != sig.size:
        raise SualgError(f"vectors must have length {sig.size}")
    h = hermitian_form_matrix(sig)
    total = Scalar.rational(0, d=sig.d)
    for j in range(sig.size):
        for k in range(sig.size):
            if h[j, k].is_zero():
                continue
            total = total + h[j, k] * u[j] * v[k].conj()
    return total


def _zero(sig: Signature) -> Scalar:
    return Scalar.rational(0, d=sig.d)


def _entry_is_real(e: Entry) -> bool:
    return e.imag().is_zero()


class GradedParts:
    """Block data (x, X, a, A, Z, z) of a graded element."""

    __slots__ = ("x", "X", "a", "A", "Z", "z", "sig")

    def __init__(self, sig: Signature, *, x=None, X=None, a=None, A=None, Z=None, z=None):
        zero = _zero(sig)
        n = sig.n
        self.sig = sig
        self.x = zero if x is None else x
        self.X = list(X) if X is not None else [zero] * n
        self.a = zero if a is None else a
        self.A = A if A is not None else Mat.zeros(n, n, d=sig.d)
        self.Z = list(Z) if Z is not None else [zero] * n
        self.z = zero if z is None else z
        self._validate()

    def _validate(self) -> None:
        sig = self.sig
        n = sig.n
        if len(self.X) != n or len(self.Z) != n:
            raise SualgError(f"X and Z must have length n = {n}")
        if self.A.rows != n or self.A.cols != n:
            raise SualgError(f"A must be {n} x {n}")
        if not _entry_is_real(self.x):
            raise SualgError("block x: must be real")
        if not _entry_is_real(self.z):
            raise SualgError("block z: must be real")
        # csu(p, q) conditions on (a, A)
        csu = self.a + self.A.trace() - entry_conj(self.a)
        if not csu.is_zero():
            raise SualgError("block (a, A): a + tr(A) - conj(a) != 0")
        signs = form_signs(sig)
        imat = Mat.diag(signs, d=sig.d)
        u_cond = entrywise_star(self.A) * imat + imat * self.A
        if not u_cond.is_zero():
            raise SualgError("block A: A* I + I A != 0")

    def as_tuple(self):
        return (self.x, tuple(self.X), self.a, self.A, tuple(self.Z), self.z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedParts):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __repr__(self) -> str:
        return (
            f"GradedParts(x={self.x}, X={[str(c) for c in self.X]}, a={self.a}, "
            f"A={self.A!r}, Z={[str(c) for c in self.Z]}, z={self.z})"
        )


class SuElement:
    """A member of su(p+1, q+1), kept together with its signature."""

    __slots__ = ("mat", "sig")

    def __init__(self, mat: Mat, sig: Signature, *, _validated: bool = False):
        if mat.rows != sig.size or mat.cols != sig.size:
            raise SualgError(f"matrix must be {sig.size} x {sig.size}")
        if not _validated:
            problems = membership_problems(mat, sig)
            if problems:
                raise SualgError("; ".join(problems))
        self.mat = mat
        self.sig = sig

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: SuElement) -> SuElement:
        return SuElement(self.mat + other.mat, self.sig, _validated=True)

    def __sub__(self, other: SuElement) -> SuElement:
        return SuElement(self.mat - other.mat, self.sig, _validated=True)

    def __neg__(self) -> SuElement:
        return SuElement(-self.mat, self.sig, _validated=True)

    def scale(self, s) -> SuElement:
        # real scalars keep membership; callers own correctness otherwise
        return SuElement(self.mat.scale(s), self.sig, _validated=True)

    def bracket(self, other: SuElement) -> SuElement:
        return SuElement(bracket(self.mat, other.mat), self.sig, _validated=True)

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuElement):
            return NotImplemented
        return self.sig == other.sig and self.mat == other.mat

    def __repr__(self) -> str:
        return f"SuElement({self.mat!r}, sig=({self.sig.p},{self.sig.q}))"

    # -- grading ---------------------------------------------------------------

    def parts(self) -> GradedParts:
        return decompose(self.mat, self.sig)

    def grade(self, k: int) -> SuElement:
        return grade_project(self, k)

    def substitute(self, assignment) -> SuElement:
        return SuElement(self.mat.substitute(assignment), self.sig, _validated=True)


def membership_problems(mat: Mat, sig: Signature) -> list[str]:
    """Zero-trace and M* H + H M = 0, reported as human-readable strings."""
    problems = []
    tr = mat.trace()
    if not tr.is_zero():
        problems.append(f"trace is {tr}, expected 0")
    h = hermitian_form_matrix(sig)
    cond = entrywise_star(mat) * h + h * mat
    if not cond.is_zero():
        bad = next(
            (j, k)
            for j in range(mat.rows)
            for k in range(mat.cols)
            if not cond[j, k].is_zero()
        )
        problems.append(f"M* H + H M has nonzero entry at {bad}")
    return problems


def assemble(parts: GradedParts, sig: Signature | None = None) -> SuElement:
    """Build the block matrix from graded data; inverse of decompose."""
    sig = sig or parts.sig
    if sig != parts.sig:
        raise SualgError("signature mismatch between parts and request")
    n, d = sig.n, sig.d
    i_unit = Scalar.i(d=d)
    signs = form_signs(sig)
    size = n + 2
    m: list[list[Entry]] = [[_zero(sig)] * size for _ in range(size)]
    m[0][0] = parts.a
    for k in range(n):
        m[0][1 + k] = parts.Z[k]
    m[0][n + 1] = i_unit * parts.z
    for j in range(n):
        m[1 + j][0] = parts.X[j]
        for k in range(n):
            m[1 + j][1 + k] = parts.A[j, k]
        m[1 + j][n + 1] = -(Scalar.rational(signs[j], d=d) * entry_conj(parts.Z[j]))
    m[n + 1][0] = i_unit * parts.x
    for k in range(n):
        m[n + 1][1 + k] = -(entry_conj(parts.X[k]) * Scalar.rational(signs[k], d=d))
    m[n + 1][n + 1] = -entry_conj(parts.a)
    return SuElement(Mat(m, d=d), sig, _validated=True)


def decompose(mat: Mat, sig: Signature) -> GradedParts:
    n, d = sig.n, sig.d
    minus_i = Scalar(0, -1, d=d)
    a = mat[0, 0]
    z_entry = mat[0, n + 1]
    x_entry = mat[n + 1, 0]
    parts = GradedParts(
        sig,
        x=minus_i * x_entry,
        X=[mat[1 + j, 0] for j in range(n)],
        a=a,
        A=Mat([[mat[1 + j, 1 + k] for k in range(n)] for j in range(n)], d=d),
        Z=[mat[0, 1 + k] for k in range(n)],
        z=minus_i * z_entry,
    )
    return parts


def grade_project(elem: SuElement, k: int) -> SuElement:
    """Projection onto the grade-k block, returned as a member."""
    parts = elem.parts()
    sig = elem.sig
    if k == -2:
        return assemble(GradedParts(sig, x=parts.x))
    if k == -1:
        return assemble(GradedParts(sig, X=parts.X))
    if k == 0:
        return assemble(GradedParts(sig, a=parts.a, A=parts.A))
    if k == 1:
        return assemble(GradedParts(sig, Z=parts.Z))
    if k == 2:
        return assemble(GradedParts(sig, z=parts.z))
    raise SualgError(f"grade must be in -2..2, got {k}")


def grading_element(sig: Signature) -> SuElement:
    """diag(1, 0, ..., 0, -1): ad acts by k on the grade-k block."""
    return assemble(GradedParts(sig, a=Scalar.rational(1, d=sig.d)))


def trace_form(m1: SuElement, m2: SuElement) -> Entry:
    """tr(M N): proportional to the Killing form, with identical zero sets."""
    if m1.sig != m2.sig:
        raise SualgError("trace_form requires matching signatures")
    return (m1.mat * m2.mat).trace()


def levi_form(x_vec: Sequence[Scalar], y_vec: Sequence[Scalar], sig: Signature) -> tuple[Scalar, Scalar]:
    """Real and imaginary Levi-form values of two C^n tangent vectors.

    re = half the grade(-2) part of [assemble(X), assemble(iY)],
    im = half the grade(-2) part of [assemble(X), assemble(Y)].
    """
    i_unit = Scalar.i(d=sig.d)
    half = Scalar.rational("1/2", d=sig.d)
    ax = assemble(GradedParts(sig, X=list(x_vec)))
    ay = assemble(GradedParts(sig, X=list(y_vec)))
    aiy = assemble(GradedParts(sig, X=[i_unit * c for c in y_vec]))
    re = half * ax.bracket(aiy).parts().x
    im = half * ax.bracket(ay).parts().x
    return re, im


def u_pq_complement_split(a: Entry, a_mat: Mat, sig: Signature) -> tuple[tuple[Entry, Mat], Entry]:
    """Split a csu(p, q) element into its u(p, q) part and grading coefficient.

    csu(p, q) = u(p, q) + R * (grading element); the coefficient is Re(a).
    """
    GradedParts(sig, a=a, A=a_mat)  # validates the csu conditions
    coeff = a.real()
    return ((a - coeff, a_mat), coeff)


# ---------------------------------------------------------------------------
# Canonical graded bases
# ---------------------------------------------------------------------------


def _unit_vector(n: int, k: int, value: Scalar, sig: Signature) -> list[Scalar]:
    vec = [_zero(sig)] * n
    vec[k] = value
    return vec


def g_minus_basis(sig: Signature) -> list[SuElement]:
    """Basis of g_{-2} + g_{-1}: [x ; X=e_1, X=i e_1, ..., X=e_n, X=i e_n]."""
    n = sig.n
    one = Scalar.rational(1, d=sig.d)
    i_unit = Scalar.i(d=sig.d)
    out = [assemble(GradedParts(sig, x=one))]
    for k in range(n):
        out.append(assemble(GradedParts(sig, X=_unit_vector(n, k, one, sig))))
        out.append(assemble(GradedParts(sig, X=_unit_vector(n, k, i_unit, sig))))
    return out


def g_plus_basis(sig: Signature) -> list[SuElement]:
    """Basis of g_1 + g_2: [Z=e_1, Z=i e_1, ..., Z=e_n, Z=i e_n ; z]."""
    n = sig.n
    one = Scalar.rational(1, d=sig.d)
    i_unit = Scalar.i(d=sig.d)
    out = []
    for k in range(n):
        out.append(assemble(GradedParts(sig, Z=_unit_vector(n, k, one, sig))))
        out.append(assemble(GradedParts(sig, Z=_unit_vector(n, k, i_unit, sig))))
    out.append(assemble(GradedParts(sig, z=one)))
    return out


def u_pq_pairs(sig: Signature) -> list[tuple[Scalar, Mat]]:
    """(a, A) pairs spanning the embedded u(p, q) inside the g_0 block."""
    n, d = sig.n, sig.d
    i_unit = Scalar.i(d=d)
    half = Scalar.rational("1/2", d=d)
    signs = form_signs(sig)
    pairs: list[tuple[Scalar, Mat]] = []
    for k in range(n):
        a_mat = Mat.unit(n, k, k, i_unit, d=d)
        pairs.append((-(half * i_unit), a_mat))  # a = -tr(A)/2 keeps csu + Re(a)=0
    for j in range(n):
        for k in range(j + 1, n):
            s = Scalar.rational(-signs[j] * signs[k], d=d)
            real_mat = Mat.unit(n, j, k, Scalar.rational(1, d=d), d=d) + Mat.unit(n, k, j, s, d=d)
            imag_mat = Mat.unit(n, j, k, i_unit, d=d) + Mat.unit(n, k, j, -(s * i_unit), d=d)
            pairs.append((_zero(sig), real_mat))
            pairs.append((_zero(sig), imag_mat))
    return pairs


def g_zero_basis(sig: Signature) -> list[SuElement]:
    """[grading element] + embedded u(p, q) basis."""
    out = [grading_element(sig)]
    for a, a_mat in u_pq_pairs(sig):
        out.append(assemble(GradedParts(sig, a=a, A=a_mat)))
    return out


def su_basis(sig: Signature) -> list[SuElement]:
    return g_minus_basis(sig) + g_zero_basis(sig) + g_plus_basis(sig)


def dual_plus_basis(sig: Signature) -> list[SuElement]:
    """Basis of g_1 + g_2 trace-form dual to g_minus_basis:
    tr(xi_a . zeta^b) = delta_a^b."""
    xi = g_minus_basis(sig)
    eta = g_plus_basis(sig)
    m = len(xi)
    gram = Mat([[trace_form(xi[a], eta[b]) for b in range(m)] for a in range(m)], d=sig.d)
    try:
        gram_inv = invert(gram)
    except LinalgError as exc:  # impossible while the pairing invariant holds
        raise SualgError(f"trace-form pairing is degenerate: {exc}") from exc
    out = []
    for b in range(m):
        acc = eta[0].scale(gram_inv[0, b])
        for c in range(1, m):
            acc = acc + eta[c].scale(gram_inv[c, b])
        out.append(acc)
    return out


def gminus_coords(elem: SuElement) -> list[Scalar]:
    """Coordinates of the g_- part in the g_minus_basis order
    [x, Re X_1, Im X_1, ..., Re X_n, Im X_n]; real scalars."""
    parts = elem.parts()
    coords = [parts.x]
    for c in parts.X:
        coords.append(c.real())
        coords.append(c.imag())
    return coords
