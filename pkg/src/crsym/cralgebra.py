"""From a CR algebra (k, q) to a symmetric/non-symmetric verdict.

The pipeline: derive the stabilizer l = k .cap. q .cap. conj(q) and the
tangent space H with its complex structure; check the stabilizer action;
fix a choice of tangent representatives and transversal; test that the
parity map nu (-id on representatives, +id elsewhere) is an automorphism;
then solve the normalization for the unknown maps.  Complexified vectors
are stored as pairs (u, w) of real coordinate vectors meaning u + i w, so
every computation stays in the exact field.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .linalg import Mat, kernel_basis, rank, symmetric_signature
from .scalars import Entry, Poly, Scalar
from .sualg import Signature, form_signs
from .extensions import (
    Extension,
    ExtensionError,
    LieAlg,
    NormalizationError,
    curvature,
    solve_normalization,
    symmetric_skeleton,
)

__all__ = [
    "CrAlgebra",
    "BasisChoice",
    "CrAlgebraError",
    "LHData",
    "InjectivityVerdict",
    "SymmetricVerdict",
    "derive_l_and_H",
    "injectivity_shortcut",
    "nu_automorphism_test",
    "check_symmetric",
    "verify_variety_membership",
    "search_choices",
    "SearchResult",
]


class CrAlgebraError(ValueError):
    pass


CVec = tuple[tuple[Scalar, ...], tuple[Scalar, ...]]


def _zero(d: int) -> Scalar:
    return Scalar.rational(0, d=d)


def _as_cvec(re: Sequence[Scalar], im: Sequence[Scalar]) -> CVec:
    return (tuple(re), tuple(im))


def _cvec_conj(v: CVec) -> CVec:
    re, im = v
    return (re, tuple(-c for c in im))


def _cvec_times_i(v: CVec) -> CVec:
    re, im = v
    return (tuple(-c for c in im), re)


def _flatten(v: CVec) -> list[Scalar]:
    return list(v[0]) + list(v[1])


@dataclass(frozen=True)
class CrAlgebra:
    """Real Lie algebra k with a complex subalgebra q of its complexification."""

    k: LieAlg
    q_basis: tuple[CVec, ...]

    def __post_init__(self):
        d = self.k.d
        for re, im in self.q_basis:
            if len(re) != self.k.dim or len(im) != self.k.dim:
                raise CrAlgebraError("q_basis vectors must match dim k")
            for c in (*re, *im):
                if not c.is_real():
                    raise CrAlgebraError("q_basis coordinates must be real scalars")
        span_rows = self._q_span_rows()
        if rank(span_rows) != 2 * len(self.q_basis):
            raise CrAlgebraError("q_basis is not C-linearly independent")
        for vi in self.q_basis:
            for vj in self.q_basis:
                br = self._cbracket(vi, vj)
                if not self._in_q_span(br):
                    raise CrAlgebraError("q is not a complex subalgebra (bracket escapes)")

    def _cbracket(self, a: CVec, b: CVec) -> CVec:
        k = self.k
        re = [x - y for x, y in zip(k.bracket_vec(a[0], b[0]), k.bracket_vec(a[1], b[1]))]
        im = [x + y for x, y in zip(k.bracket_vec(a[0], b[1]), k.bracket_vec(a[1], b[0]))]
        return _as_cvec(re, im)

    def _q_span_rows(self) -> list[list[Scalar]]:
        rows = []
        for v in self.q_basis:
            rows.append(_flatten(v))
            rows.append(_flatten(_cvec_times_i(v)))
        return rows

    def _qbar_span_rows(self) -> list[list[Scalar]]:
        rows = []
        for v in self.q_basis:
            w = _cvec_conj(v)
            rows.append(_flatten(w))
            rows.append(_flatten(_cvec_times_i(w)))
        return rows

    def _in_q_span(self, v: CVec) -> bool:
        rows = self._q_span_rows()
        base = rank(rows)
        return rank(rows + [_flatten(v)]) == base


def _rref_basis(rows: list[list[Scalar]]) -> list[list[Scalar]]:
    from .linalg import _rref

    if not rows:
        return []
    work, pivots = _rref([list(r) for r in rows])
    return [work[r] for r in range(len(pivots))]


def _real_points(span_rows: list[list[Scalar]], dim: int, d: int) -> list[list[Scalar]]:
    """Real vectors v with (v, 0) inside the given real span of C-vectors."""
    basis = _rref_basis(span_rows)
    if not basis:
        return []
    # solve sum c_r basis_r with vanishing imaginary block
    imag_cols = [[basis[r][dim + j] for r in range(len(basis))] for j in range(dim)]
    ker = kernel_basis(imag_cols, len(basis), d=d)
    out = []
    for coeffs in ker:
        vec = [_zero(d)] * dim
        for r, c in enumerate(coeffs):
            if c.is_zero():
                continue
            for j in range(dim):
                vec[j] = vec[j] + c * basis[r][j]
        out.append(vec)
    return _rref_basis(out)


class InjectivityVerdict(Enum):
    INJECTIVE = "injective"
    NOT_INJECTIVE_HENCE_FLAT = "not-injective-hence-flat"


@dataclass(frozen=True)
class LHData:
    """Output of the first pipeline step."""

    l_basis: tuple[tuple[Scalar, ...], ...]
    h_basis: tuple[tuple[Scalar, ...], ...]
    n: int
    levi_signature: tuple[int, int]
    transversal: tuple[Scalar, ...]

    @property
    def sig_pair(self) -> tuple[int, int]:
        return self.levi_signature


def _decompose_in(basis_rows: list[list[Scalar]], vec: Sequence[Scalar], d: int) -> "list[Scalar] | None":
    from .linalg import solve_affine

    m = len(basis_rows)
    dim = len(vec)
    eqs = []
    for j in range(dim):
        coeffs = [basis_rows[r][j] for r in range(m)]
        eqs.append((coeffs, vec[j]))
    space = solve_affine(eqs, m, d=d)
    if space.is_empty:
        return None
    return list(space.particular)


class _Frame:
    """Working frame: l-basis, H-basis, transversal, with exact coordinate
    maps and the complex structure J on H mod l."""

    def __init__(self, cr: CrAlgebra):
        k = cr.k
        d = k.d
        dim = k.dim
        q_rows = cr._q_span_rows()
        qbar_rows = cr._qbar_span_rows()
        # intersection q .cap. qbar via kernel of [A^T | -B^T]
        a_basis = _rref_basis(q_rows)
        b_basis = _rref_basis(qbar_rows)
        cols = len(a_basis) + len(b_basis)
        rows = []
        for j in range(2 * dim):
            rows.append(
                [a_basis[r][j] for r in range(len(a_basis))]
                + [-b_basis[r][j] for r in range(len(b_basis))]
            )
        inter_rows = []
        for coeffs in kernel_basis(rows, cols, d=d):
            vec = [_zero(d)] * (2 * dim)
            for r in range(len(a_basis)):
                c = coeffs[r]
                if c.is_zero():
                    continue
                for j in range(2 * dim):
                    vec[j] = vec[j] + c * a_basis[r][j]
            inter_rows.append(vec)
        self.cr = cr
        self.d = d
        self.dim = dim
        self.l_basis = _real_points(inter_rows, dim, d)
        self.w_basis = _real_points(q_rows + qbar_rows, dim, d)
        self.q_rows = a_basis
        self.qbar_rows = b_basis
        if len(self.w_basis) != dim - 1:
            raise CrAlgebraError(
                "tangent space H must have real codimension 1 in k/l "
                f"(got codimension {dim - len(self.w_basis)})"
            )
        if (len(self.w_basis) - len(self.l_basis)) % 2 != 0:
            raise CrAlgebraError("H must be even-dimensional over R")
        self.n = (len(self.w_basis) - len(self.l_basis)) // 2
        # H-basis: extend the l-basis to a basis of W by rref rows
        h_rows = []
        current = [list(r) for r in self.l_basis]
        base = rank(current) if current else 0
        for row in self.w_basis:
            if rank(current + [row]) > base:
                current.append(row)
                base += 1
                h_rows.append(row)
        self.h_basis = h_rows
        # transversal: first standard basis vector outside W
        w_rank_rows = [list(r) for r in self.w_basis]
        w_rank = rank(w_rank_rows) if w_rank_rows else 0
        transversal = None
        for j in range(dim):
            e = [_zero(d)] * dim
            e[j] = Scalar.rational(1, d=d)
            if rank(w_rank_rows + [e]) > w_rank:
                transversal = e
                break
        if transversal is None:
            raise CrAlgebraError("could not find a transversal direction")
        self.transversal = transversal
        # full frame for coordinates: l + H + transversal
        self.frame_rows = [list(r) for r in self.l_basis] + [list(r) for r in h_rows] + [transversal]
        if rank(self.frame_rows) != dim:
            raise CrAlgebraError("internal frame is degenerate")

    def coords(self, vec: Sequence[Scalar]) -> list[Scalar]:
        out = _decompose_in(self.frame_rows, vec, self.d)
        if out is None:
            raise CrAlgebraError("vector escapes the working frame")
        return out

    def transversal_coord(self, vec: Sequence[Scalar]) -> Scalar:
        return self.coords(vec)[-1]

    def in_w(self, vec: Sequence[Scalar]) -> bool:
        return self.transversal_coord(vec).is_zero()

    def j_apply(self, vec: Sequence[Scalar]) -> list[Scalar]:
        """J on W mod l: split (v, 0) = xi + eta with xi in q, eta in qbar;
        J v = 2 * imaginary part of xi (validity of the split is checked)."""
        d, dim = self.d, self.dim
        target = list(vec) + [_zero(d)] * dim
        rows = self.q_rows + self.qbar_rows
        coeffs = _decompose_in(rows, target, d)
        if coeffs is None:
            raise CrAlgebraError("vector is not in W; J undefined")
        xi = [_zero(d)] * (2 * dim)
        for r in range(len(self.q_rows)):
            c = coeffs[r]
            if c.is_zero():
                continue
            for j in range(2 * dim):
                xi[j] = xi[j] + c * self.q_rows[r][j]
        j_vec = [Scalar.rational(2, d=d) * xi[dim + j] for j in range(dim)]
        # the imaginary defect v - 2 Re(xi) must lie in l
        defect = [vec[j] - Scalar.rational(2, d=d) * xi[j] for j in range(dim)]
        l_rows = [list(r) for r in self.l_basis]
        base = rank(l_rows) if l_rows else 0
        if rank(l_rows + [defect]) != base and any(not c.is_zero() for c in defect):
            raise CrAlgebraError("complex structure split failed (v - 2 Re xi not in l)")
        return j_vec

    def levi(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple[Scalar, Scalar]:
        """(real, imaginary) Levi values against the canonical transversal."""
        half = Scalar.rational("1/2", d=self.d)
        jv = self.j_apply(v)
        re = half * self.transversal_coord(self.cr.k.bracket_vec(list(u), jv))
        im = half * self.transversal_coord(self.cr.k.bracket_vec(list(u), list(v)))
        return re, im

    def class_mod_l(self, vec: Sequence[Scalar]) -> list[Scalar]:
        """Coordinates in (H-basis, transversal) of the class mod l."""
        return self.coords(vec)[len(self.l_basis) :]


def derive_l_and_H(cr: CrAlgebra) -> LHData:
    """Stabilizer subalgebra, tangent basis and exact Levi signature.

    Rejects inputs that are not of non-degenerate hypersurface type: H of
    real codimension != 1 or a degenerate Levi form.
    """
    frame = _Frame(cr)
    h = frame.h_basis
    gram = Mat(
        [[frame.levi(u, v)[0] for v in h] for u in h],
        d=frame.d,
    )
    pos, neg = symmetric_signature(gram)
    if pos + neg != len(h):
        raise CrAlgebraError("Levi form is degenerate")
    p, q = sorted((pos // 2, neg // 2))
    return LHData(
        l_basis=tuple(tuple(r) for r in frame.l_basis),
        h_basis=tuple(tuple(r) for r in h),
        n=frame.n,
        levi_signature=(p, q),
        transversal=tuple(frame.transversal),
    )


def injectivity_shortcut(cr: CrAlgebra, lh: LHData) -> tuple[InjectivityVerdict, int]:
    """Kernel of the stabilizer action on H: a nontrivial kernel forces
    flatness.  Returns (verdict, kernel dimension)."""
    frame = _Frame(cr)
    if not frame.l_basis:
        return InjectivityVerdict.INJECTIVE, 0
    action_rows = []
    for l_vec in frame.l_basis:
        row = []
        for h_vec in frame.h_basis:
            image = cr.k.bracket_vec(list(l_vec), list(h_vec))
            cls = frame.class_mod_l(image)
            if not cls[-1].is_zero():
                raise CrAlgebraError("stabilizer does not preserve H mod l")
            row.extend(cls[:-1])
        action_rows.append(row)
    ker = kernel_basis(
        [[action_rows[r][c] for r in range(len(action_rows))] for c in range(len(action_rows[0]))],
        len(action_rows),
        d=frame.d,
    )
    kdim = len(ker)
    if kdim:
        return InjectivityVerdict.NOT_INJECTIVE_HENCE_FLAT, kdim
    return InjectivityVerdict.INJECTIVE, 0


@dataclass(frozen=True)
class BasisChoice:
    """Representatives (2n vectors, J-paired in order r_1, J r_1, r_2, ...)
    of a complex tangent basis, plus a transversal element of k."""

    representatives: tuple[tuple[Scalar, ...], ...]
    complement: tuple[Scalar, ...]


def _validate_choice(cr: CrAlgebra, choice: BasisChoice) -> _Frame:
    frame = _Frame(cr)
    n = frame.n
    if len(choice.representatives) != 2 * n:
        raise CrAlgebraError(f"choice needs 2n = {2 * n} representatives")
    for r_vec in choice.representatives:
        if len(r_vec) != frame.dim:
            raise CrAlgebraError("representative has wrong length")
        if not frame.in_w(r_vec):
            raise CrAlgebraError("representative class is not tangent (outside W)")
    lr = [list(r) for r in frame.l_basis]
    if rank(lr + [list(r) for r in choice.representatives]) != len(lr) + 2 * n:
        raise CrAlgebraError("representatives do not span H mod l")
    # J-pairing: J(r_{2k}) = r_{2k+1} mod l
    for k in range(n):
        jr = frame.j_apply(list(choice.representatives[2 * k]))
        diff = [a - b for a, b in zip(jr, choice.representatives[2 * k + 1])]
        base = rank(lr) if lr else 0
        if any(not c.is_zero() for c in diff) and rank(lr + [diff]) != base:
            raise CrAlgebraError("representatives are not J-paired in order")
    if frame.in_w(choice.complement):
        raise CrAlgebraError("complement element is tangent; must be transversal")
    return frame


def _adapted_algebra(cr: CrAlgebra, choice: BasisChoice, frame: _Frame) -> tuple[LieAlg, Mat]:
    """k rewritten in the basis (complement, representatives, l-basis)."""
    from .linalg import invert

    d = cr.k.d
    dim = cr.k.dim
    cols = [list(choice.complement)] + [list(r) for r in choice.representatives] + [
        list(r) for r in frame.l_basis
    ]
    change = Mat([[cols[c][r] for c in range(dim)] for r in range(dim)], d=d)
    change_inv = invert(change)
    names = ["x"] + [f"X{s + 1}" for s in range(2 * frame.n)] + [
        f"l{r + 1}" for r in range(len(frame.l_basis))
    ]
    table = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            br = cr.k.bracket_vec(cols[i], cols[j])
            coords = [
                sum((change_inv[r, c] * br[c] for c in range(dim)), _zero(d))
                for r in range(dim)
            ]
            table[(i, j)] = coords
    return LieAlg.from_table(names, table, d=d), change


def _alpha_l_images(
    adapted: LieAlg, sig: Signature, n_l: int
) -> dict[int, "object"]:
    """Grade-0 images of the l-basis matching their adjoint action on k/l.

    Solved exactly; raises when no grade-0 element reproduces the action,
    which disqualifies the choice."""
    from .linalg import solve_affine
    from .sualg import SuElement, g_zero_basis, gminus_coords, g_minus_basis

    m = 2 * sig.n + 1
    d = sig.d
    g0 = g_zero_basis(sig)
    xi = g_minus_basis(sig)
    out: dict[int, SuElement] = {}
    for li in range(m, m + n_l):
        # target: ad(l) on k/l in the adapted coordinates
        target_cols = []
        for cj in range(m):
            coords = adapted.bracket_basis(li, cj)
            target_cols.append(coords[:m])
        # unknown combination of g0 basis acting on xi
        eqs = []
        for cj in range(m):
            action_cols = [gminus_coords(g.bracket(xi[cj])) for g in g0]
            for r in range(m):
                coeffs = [action_cols[b][r] for b in range(len(g0))]
                eqs.append((coeffs, target_cols[cj][r]))
        space = solve_affine(eqs, len(g0), d=d)
        if space.is_empty:
            raise CrAlgebraError(
                f"stabilizer element {adapted.names[li]} has no grade-0 realization"
            )
        coeffs = space.particular
        acc = g0[0].scale(coeffs[0])
        for b in range(1, len(g0)):
            acc = acc + g0[b].scale(coeffs[b])
        out[li] = acc
    return out


def _build_skeleton(cr: CrAlgebra, choice: BasisChoice) -> tuple[Extension, LieAlg]:
    frame = _validate_choice(cr, choice)
    lh = derive_l_and_H(cr)
    p, q = lh.levi_signature
    sig = Signature(p, q, d=cr.k.d)
    adapted, _change = _adapted_algebra(cr, choice, frame)
    alpha_l = _alpha_l_images(adapted, sig, len(frame.l_basis))
    return symmetric_skeleton(adapted, sig, alpha_l), adapted


def _tau_even_odd_conditions(skeleton: Extension) -> tuple[bool, bool, list[str]]:
    """Identical (all-unknown) vanishing of the parity-forbidden curvature
    components: even parts on (transversal+l, representative) pairs, odd
    parts on (representative, representative) pairs."""
    sig = skeleton.sig
    n = sig.n
    tau = curvature(skeleton)
    reps = range(1, 2 * n + 1)
    notes = []
    even_ok = True
    odd_ok = True

    def identically_zero(e: Entry) -> bool:
        return e.is_zero()

    for s in reps:
        pairs = [(0, s)] + [(s, li) if s < li else (li, s) for li in skeleton.l_indices]
        for i, j in pairs:
            value = tau.value(min(i, j), max(i, j))
            parts = value.parts()
            even_entries = [parts.x, parts.a, parts.z] + [
                parts.A[r, c] for r in range(n) for c in range(n)
            ]
            if not all(identically_zero(e) for e in even_entries):
                even_ok = False
                notes.append(f"even curvature component survives on pair ({i},{j})")
    for s in reps:
        for t in reps:
            if s >= t:
                continue
            parts = tau.value(s, t).parts()
            odd_entries = list(parts.X) + list(parts.Z)
            if not all(identically_zero(e) for e in odd_entries):
                odd_ok = False
                notes.append(f"odd curvature component survives on pair ({s},{t})")
    return even_ok, odd_ok, notes


def nu_automorphism_test(cr: CrAlgebra, choice: BasisChoice) -> bool:
    """Whether the parity map nu of the choice is a Lie algebra automorphism.

    Two independent routes must agree: the direct bracket test on structure
    constants, and identical vanishing of the parity-forbidden curvature
    components of the symmetric-form skeleton."""
    frame = _validate_choice(cr, choice)
    adapted, _ = _adapted_algebra(cr, choice, frame)
    n = frame.n
    dim = adapted.dim
    d = adapted.d

    def nu_sign(i: int) -> int:
        return -1 if 1 <= i <= 2 * n else 1

    direct = True
    for i in range(dim):
        for j in range(i + 1, dim):
            coords = adapted.bracket_basis(i, j)
            lhs = [Scalar.rational(nu_sign(k), d=d) * coords[k] for k in range(dim)]
            rhs_scale = nu_sign(i) * nu_sign(j)
            rhs = [Scalar.rational(rhs_scale, d=d) * c for c in coords]
            if any(not (a - b).is_zero() for a, b in zip(lhs, rhs)):
                direct = False
                break
        if not direct:
            break

    try:
        skeleton, _ = _build_skeleton(cr, choice)
        even_ok, odd_ok, _notes = _tau_even_odd_conditions(skeleton)
        via_tau = even_ok and odd_ok
    except CrAlgebraError:
        via_tau = False

    if direct != via_tau:
        raise CrAlgebraError(
            "internal disagreement between the bracket and curvature routes of the parity test"
        )
    return direct


class SymmetricVerdictKind(Enum):
    SYMMETRIC = "symmetric"
    NOT_SYMMETRIC_FOR_CHOICE = "not-symmetric-for-choice"


@dataclass(frozen=True)
class SymmetricVerdict:
    kind: SymmetricVerdictKind
    reason: str = ""
    extension: "Extension | None" = None
    not_checked: tuple[str, ...] = (
        "group-level integrability of the parity automorphism (algebra level only)",
    )


def check_symmetric(cr: CrAlgebra, choice: BasisChoice) -> SymmetricVerdict:
    """Full per-choice pipeline; on success carries the normal extension."""
    if not nu_automorphism_test(cr, choice):
        return SymmetricVerdict(
            SymmetricVerdictKind.NOT_SYMMETRIC_FOR_CHOICE,
            reason="parity map is not a Lie algebra automorphism for this choice",
        )
    skeleton, _adapted = _build_skeleton(cr, choice)
    # remaining obstruction: the transversal Levi scale and the l-blocks
    sig = skeleton.sig
    n = sig.n
    tau = curvature(skeleton)
    for li in skeleton.l_indices:
        value = tau.value(0, li)
        if not value.mat.is_zero():
            return SymmetricVerdict(
                SymmetricVerdictKind.NOT_SYMMETRIC_FOR_CHOICE,
                reason="curvature component on (stabilizer x transversal) survives",
            )
    for s in range(1, 2 * n + 1):
        for t in range(s + 1, 2 * n + 1):
            if not tau.value(s, t).parts().x.is_zero():
                return SymmetricVerdict(
                    SymmetricVerdictKind.NOT_SYMMETRIC_FOR_CHOICE,
                    reason="tangent pair curvature meets the transversal direction "
                    "(representatives are not adapted to the Levi form)",
                )
    try:
        solved = solve_normalization(skeleton)
    except NormalizationError as exc:
        return SymmetricVerdict(
            SymmetricVerdictKind.NOT_SYMMETRIC_FOR_CHOICE, reason=str(exc)
        )
    return SymmetricVerdict(SymmetricVerdictKind.SYMMETRIC, extension=solved)


# ---------------------------------------------------------------------------
# The explicit three-dimensional question
# ---------------------------------------------------------------------------


def verify_variety_membership(b_inv: Mat) -> tuple[bool, "tuple[Scalar, ...] | None"]:
    """Whether an invertible 3x3 matrix matches the parameterized pattern

        [[(p1 p2 - p3 p4)/2, p5, (p5 p3 - 2 p6)/2],
         [p6, p4, p2],
         [0, p1, p3]]

    returning the parameters (p1..p6) on success."""
    from .linalg import invert

    if b_inv.rows != 3 or b_inv.cols != 3:
        raise CrAlgebraError("expected a 3x3 matrix")
    invert(b_inv)  # raises LinalgError("matrix is singular") on singular input
    d = b_inv.d
    p5 = b_inv[0, 1]
    p6 = b_inv[1, 0]
    p4 = b_inv[1, 1]
    p2 = b_inv[1, 2]
    p1 = b_inv[2, 1]
    p3 = b_inv[2, 2]
    half = Scalar.rational("1/2", d=d)
    ok = (
        b_inv[2, 0].is_zero()
        and b_inv[0, 0] == half * (p1 * p2 - p3 * p4)
        and b_inv[0, 2] == half * (p5 * p3 - Scalar.rational(2, d=d) * p6)
    )
    if not ok:
        return False, None
    return True, (p1, p2, p3, p4, p5, p6)


@dataclass(frozen=True)
class SearchResult:
    """Search-mode output on a three-dimensional algebra with trivial
    stabilizer: the exact constraint system on a 3x3 choice matrix
    [transversal | r_1 | r_2] (columns in k-coordinates), the canonical
    choice derived from the stored q-generator, and its pipeline verdict."""

    primary_conditions: tuple[Poly, ...]  # affine/quadratic: [r1, r2] + 2 c = 0
    parity_conditions: tuple[Poly, ...]  # det([c, r_j], r1, r2) = 0
    canonical_matrix: Mat
    verdict: SymmetricVerdict


def _poly_det3(m: list[list[Poly]]) -> Poly:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def search_choices(cr: CrAlgebra) -> SearchResult:
    """Bounded search for dim k = 3 with trivial stabilizer.

    Derives the constraint system a choice matrix must satisfy for its own
    columns to pass the parity and Levi conditions, then runs the pipeline
    on the canonical choice read off the stored q-basis generator
    (r_1 = Re g, r_2 = Im g, transversal = -1/2 [r_1, r_2]).
    """
    k = cr.k
    if k.dim != 3:
        raise CrAlgebraError("search mode is restricted to dim k = 3")
    lh = derive_l_and_H(cr)
    if lh.l_basis:
        raise CrAlgebraError("search mode is restricted to a trivial stabilizer")
    d = k.d
    sign1 = form_signs(Signature(*lh.levi_signature, d=d))[0]

    mvars = [[Poly.var(f"m{r}{c}", d=d) for c in range(3)] for r in range(3)]
    c_col = [mvars[r][0] for r in range(3)]
    r1 = [mvars[r][1] for r in range(3)]
    r2 = [mvars[r][2] for r in range(3)]
    br = k.bracket_vec(r1, r2)
    two = Scalar.rational(2 * sign1, d=d)
    primary = tuple(br[j] + two * c_col[j] for j in range(3))
    parity = []
    for rj in (r1, r2):
        v = k.bracket_vec(c_col, rj)
        parity.append(_poly_det3([[v[0], r1[0], r2[0]], [v[1], r1[1], r2[1]], [v[2], r1[2], r2[2]]]))

    gen = cr.q_basis[0]
    rep1 = list(gen[0])
    rep2 = list(gen[1])
    half = Scalar.rational("1/2", d=d)
    sign_scale = Scalar.rational(sign1, d=d)
    comp = [
        -(half * sign_scale * c) for c in k.bracket_vec(rep1, rep2)
    ]
    canonical = Mat(
        [[comp[r], rep1[r], rep2[r]] for r in range(3)],
        d=d,
    )
    choice = BasisChoice(
        representatives=(tuple(rep1), tuple(rep2)),
        complement=tuple(comp),
    )
    verdict = check_symmetric(cr, choice)
    return SearchResult(primary, tuple(parity), canonical, verdict)
