"""Extensions of a real Lie algebra into su(p+1, q+1): curvature, flatness,
normality with respect to the codifferential, and the algebraic criteria
attached to symmetric homogeneous CR geometries.

An extension holds a finite-dimensional real Lie algebra k (structure
constants), a subalgebra l spanned by a subset of the basis, and a linear map
alpha into the graded model, one matrix per basis element.  Matrices may
carry polynomial entries in named real unknowns while a normalization is
being solved; ``solve_normalization`` pins them.

The codifferential convention used throughout:

    dstar(kappa)(X) = sum_a [zeta^a, kappa(xi_a, X)]
                      - 1/2 sum_a kappa(pr_minus([zeta^a, X]), xi_a)

with {xi_a} the canonical basis of the negative part, {zeta^a} its trace-form
dual in the positive part.  The 1/2 coefficient is anchored by the shipped
non-flat example, whose printed map must come out normal (it does; the
alternate coefficient 1 is also satisfied by that anchor because its second
term vanishes there, so the default stays 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import LinalgError, Mat, invert, rank, solve_affine
from .scalars import Entry, Poly, Scalar
from .sualg import (
    GradedParts,
    Signature,
    SuElement,
    SualgError,
    assemble,
    dual_plus_basis,
    form_signs,
    g_minus_basis,
    gminus_coords,
    grade_project,
    grading_element,
    u_pq_complement_split,
)

__all__ = [
    "LieAlg",
    "Extension",
    "CurvatureTable",
    "ExtensionError",
    "ExtensionIssue",
    "NormalizationError",
    "curvature",
    "is_flat",
    "weyl_component",
    "kostant_codifferential",
    "solve_normalization",
    "check_symmetric_form",
    "invariant_weyl_descriptor",
    "metrizability_check",
    "nijenhuis_check",
    "extension_problems",
    "symmetric_skeleton",
    "KOSTANT_SECOND_TERM",
]

# Anchored by the shipped non-flat example; see module docstring.
KOSTANT_SECOND_TERM = Fraction(1, 2)


class ExtensionError(ValueError):
    pass


class NormalizationError(ExtensionError):
    def __init__(self, message: str, kernel_dim: int | None = None):
        super().__init__(message)
        self.kernel_dim = kernel_dim


def _zero(d: int) -> Scalar:
    return Scalar.rational(0, d=d)


@dataclass(frozen=True)
class LieAlg:
    """Real Lie algebra by structure constants: [e_i, e_j] = sum_k c[i][j][k] e_k."""

    dim: int
    names: tuple[str, ...]
    c: tuple[tuple[tuple[Scalar, ...], ...], ...]
    d: int = 2

    @classmethod
    def from_table(cls, names: Sequence[str], table: Mapping[tuple[int, int], Sequence], d: int = 2) -> LieAlg:
        """Build from a sparse {(i, j): coords} table with i < j."""
        dim = len(names)
        zero = _zero(d)
        cube = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coords in table.items():
            if not i < j:
                raise ExtensionError("table keys must satisfy i < j")
            vec = [x if isinstance(x, Scalar) else Scalar.rational(x, d=d) for x in coords]
            cube[i][j] = vec
            cube[j][i] = [-x for x in vec]
        alg = cls(dim, tuple(names), tuple(tuple(tuple(r) for r in plane) for plane in cube), d=d)
        alg.validate()
        return alg

    def bracket_basis(self, i: int, j: int) -> list[Scalar]:
        return list(self.c[i][j])

    def bracket_vec(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> list[Scalar]:
        out = [_zero(self.d)] * self.dim
        for i in range(self.dim):
            if u[i].is_zero():
                continue
            for j in range(self.dim):
                if v[j].is_zero():
                    continue
                f = u[i] * v[j]
                for k in range(self.dim):
                    ck = self.c[i][j][k]
                    if not ck.is_zero():
                        out[k] = out[k] + f * ck
        return out

    def validate(self) -> None:
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if not (self.c[i][j][k] + self.c[j][i][k]).is_zero():
                        raise ExtensionError(f"structure constants not antisymmetric at ({i},{j})")
                    if not self.c[i][j][k].is_real():
                        raise ExtensionError("structure constants must be real")
        basis = []
        for i in range(self.dim):
            e = [_zero(self.d)] * self.dim
            e[i] = Scalar.rational(1, d=self.d)
            basis.append(e)
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    acc = [_zero(self.d)] * self.dim
                    for (a, b, c_) in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket_basis(a, b)
                        term = self.bracket_vec(inner, basis[c_])
                        acc = [x + y for x, y in zip(acc, term)]
                    if any(not x.is_zero() for x in acc):
                        raise ExtensionError(f"Jacobi identity fails on basis triple ({i},{j},{k})")


@dataclass(frozen=True)
class Extension:
    """(alpha, l) data for a candidate homogeneous model in su(p+1, q+1)."""

    k: LieAlg
    l_indices: tuple[int, ...]
    sig: Signature
    alpha: tuple[SuElement, ...]
    unknowns: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.alpha) != self.k.dim:
            raise ExtensionError("alpha must provide one matrix per basis element")
        if any(i < 0 or i >= self.k.dim for i in self.l_indices):
            raise ExtensionError("l_indices out of range")

    @property
    def complement_indices(self) -> tuple[int, ...]:
        lset = set(self.l_indices)
        return tuple(i for i in range(self.k.dim) if i not in lset)

    def alpha_of(self, coords: Sequence[Scalar]) -> SuElement:
        acc = self.alpha[0].scale(coords[0])
        for i in range(1, self.k.dim):
            if coords[i].is_zero():
                continue
            acc = acc + self.alpha[i].scale(coords[i])
        return acc

    def substitute(self, assignment: Mapping[str, Scalar]) -> Extension:
        new_alpha = tuple(a.substitute(assignment) for a in self.alpha)
        remaining = tuple(u for u in self.unknowns if u not in assignment)
        return Extension(self.k, self.l_indices, self.sig, new_alpha, remaining)


@dataclass(frozen=True)
class ExtensionIssue:
    code: str
    message: str

    def __str__(self) -> str:
        return self.message


def extension_problems(ext: Extension) -> list[ExtensionIssue]:
    """Violations of the extension contract; empty if valid.

    With polynomial entries present, only the unknown-independent parts are
    judged (residuals in unknowns belong to the normalization solver).
    """
    problems: list[ExtensionIssue] = []
    k, sig = ext.k, ext.sig
    lset = set(ext.l_indices)
    # l is a subalgebra
    for i in ext.l_indices:
        for j in ext.l_indices:
            if i >= j:
                continue
            coords = k.bracket_basis(i, j)
            for idx, coord in enumerate(coords):
                if idx not in lset and not coord.is_zero():
                    problems.append(ExtensionIssue(
                        "l_closure",
                        f"l is not a subalgebra: [{k.names[i]},{k.names[j]}] leaves l",
                    ))
                    break
    # alpha(l) inside the parabolic (no negative grades)
    for i in ext.l_indices:
        parts = ext.alpha[i].parts()
        if not (parts.x.is_zero() and all(c.is_zero() for c in parts.X)):
            problems.append(ExtensionIssue(
                "alpha_l_parabolic",
                f"alpha({k.names[i]}) has a negative-grade part, not in p",
            ))
    # abar: k/l -> g_- is an isomorphism
    comp = ext.complement_indices
    if len(comp) != 2 * sig.n + 1:
        problems.append(ExtensionIssue(
            "abar_iso", f"dim k/l = {len(comp)} but model needs {2 * sig.n + 1}"
        ))
    else:
        cols = []
        for i in comp:
            coords = gminus_coords(ext.alpha[i])
            if any(isinstance(c, Poly) for c in coords):
                problems.append(ExtensionIssue(
                    "abar_iso", "negative-grade part of alpha must be unknown-free"
                ))
                break
            cols.append(coords)
        else:
            if rank(cols) != 2 * sig.n + 1:
                problems.append(ExtensionIssue(
                    "abar_iso", "abar: k/l -> g_- is not an isomorphism"
                ))
    # infinitesimal equivariance (only judged when unknown-free)
    if not ext.unknowns:
        for li in ext.l_indices:
            for j in range(k.dim):
                resid = ext.alpha[li].bracket(ext.alpha[j]) - ext.alpha_of(k.bracket_basis(li, j))
                if not resid.is_zero():
                    problems.append(ExtensionIssue(
                        "equivariance",
                        f"equivariance fails on ({k.names[li]}, {k.names[j]})",
                    ))
    return problems


@dataclass(frozen=True)
class CurvatureTable:
    """tau on basis pairs i < j; antisymmetry is implicit."""

    sig: Signature
    values: Mapping[tuple[int, int], SuElement]

    def value(self, i: int, j: int) -> SuElement:
        if i == j:
            raise ExtensionError("tau is alternating; use i != j")
        if i < j:
            return self.values[(i, j)]
        return -self.values[(j, i)]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def escapes_p(self) -> list[tuple[int, int]]:
        bad = []
        for (i, j), v in self.values.items():
            parts = v.parts()
            if not (parts.x.is_zero() and all(c.is_zero() for c in parts.X)):
                bad.append((i, j))
        return bad


def curvature(ext: Extension) -> CurvatureTable:
    """tau(e_i, e_j) = [alpha(e_i), alpha(e_j)] - alpha([e_i, e_j])."""
    values = {}
    for i in range(ext.k.dim):
        for j in range(i + 1, ext.k.dim):
            values[(i, j)] = ext.alpha[i].bracket(ext.alpha[j]) - ext.alpha_of(
                ext.k.bracket_basis(i, j)
            )
    return CurvatureTable(ext.sig, values)


def is_flat(ext: Extension) -> bool:
    return curvature(ext).is_zero()


def weyl_component(ext: Extension) -> dict[tuple[int, int], SuElement]:
    """Grade-0 projection of every curvature value (the Weyl tensor data)."""
    table = curvature(ext)
    return {key: grade_project(v, 0) for key, v in table.values.items()}


def _abar_matrix(ext: Extension) -> Mat:
    cols = [gminus_coords(ext.alpha[i]) for i in ext.complement_indices]
    n_rows = 2 * ext.sig.n + 1
    if len(cols) != n_rows:
        raise ExtensionError("abar is not square: dim k/l != 2n+1")
    return Mat([[cols[c][r] for c in range(n_rows)] for r in range(n_rows)], d=ext.sig.d)


def kostant_codifferential(ext: Extension) -> dict[int, SuElement]:
    """dstar(kappa) evaluated on the k/l basis (keyed by complement index).

    kappa is tau transported to negative-part arguments through abar; the
    convention is the module-level formula with coefficient
    KOSTANT_SECOND_TERM on the second sum.
    """
    sig = ext.sig
    comp = ext.complement_indices
    m = 2 * sig.n + 1
    xi = g_minus_basis(sig)
    zetas = dual_plus_basis(sig)
    abar = _abar_matrix(ext)
    abar_inv = invert(abar)

    tau = curvature(ext)

    def tau_comp(i: int, j: int) -> SuElement:
        return tau.value(comp[i], comp[j])

    # kappa on pairs of canonical xi-basis vectors
    zero_elem = xi[0] - xi[0]
    kappa = [[zero_elem for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(m):
            if a == b:
                continue
            acc = zero_elem
            for i in range(m):
                ca = abar_inv[i, a]
                if ca.is_zero():
                    continue
                for j in range(m):
                    cb = abar_inv[j, b]
                    if cb.is_zero() or i == j:
                        continue
                    acc = acc + tau_comp(i, j).scale(ca * cb)
            kappa[a][b] = acc

    def kappa_vec(coords: Sequence[Scalar], b: int) -> SuElement:
        acc = zero_elem
        for a, coeff in enumerate(coords):
            if coeff.is_zero():
                continue
            acc = acc + kappa[a][b].scale(coeff)
        return acc

    half = Scalar.rational(KOSTANT_SECOND_TERM, d=sig.d)
    dstar_on_xi = []
    for b in range(m):
        acc = zero_elem
        for a in range(m):
            acc = acc + zetas[a].bracket(kappa[a][b])
        correction = zero_elem
        for a in range(m):
            w = zetas[a].bracket(xi[b])
            coords = gminus_coords(w)
            correction = correction + kappa_vec(coords, a)
        dstar_on_xi.append(acc - correction.scale(half))

    out = {}
    for pos, ci in enumerate(comp):
        acc = zero_elem
        for b in range(m):
            coeff = abar[b, pos]
            if coeff.is_zero():
                continue
            acc = acc + dstar_on_xi[b].scale(coeff)
        out[ci] = acc
    return out


# ---------------------------------------------------------------------------
# Normalization solver
# ---------------------------------------------------------------------------


def _poly_equations_from_matrix(mat: Mat) -> list[Poly]:
    eqs = []
    for row in mat.entries:
        for e in row:
            if isinstance(e, Scalar):
                if not e.is_zero():
                    eqs.append(Poly.const(e, d=mat.d))
            elif not e.is_zero():
                eqs.append(e)
    return eqs


def _split_real_imag(eqs: Sequence[Poly]) -> list[Poly]:
    out = []
    for eq in eqs:
        for part in (eq.real(), eq.imag()):
            if not part.is_zero():
                out.append(part)
    return out


def _normalization_equations(ext: Extension) -> list[Poly]:
    eqs: list[Poly] = []
    lset = set(ext.l_indices)
    tau = curvature(ext)
    for (i, j), value in tau.values.items():
        if i in lset or j in lset:
            # equivariance: tau(l, .) must vanish outright
            eqs.extend(_poly_equations_from_matrix(value.mat))
        else:
            # curvature must stay inside the parabolic
            parts = value.parts()
            for e in [parts.x, *parts.X]:
                if isinstance(e, Scalar):
                    if not e.is_zero():
                        eqs.append(Poly.const(e, d=ext.sig.d))
                elif not e.is_zero():
                    eqs.append(e)
    for _, value in sorted(kostant_codifferential(ext).items()):
        eqs.extend(_poly_equations_from_matrix(value.mat))
    return _split_real_imag(eqs)


def solve_normalization(skeleton: Extension) -> Extension:
    """Pin the unknown maps of a symmetric-form skeleton by the normality
    equations; returns the substituted extension.

    Raises NormalizationError when the system is inconsistent ("no normal
    extension for this skeleton") or leaves a gauge free (kernel dimension
    reported).  Equations of degree two are handled by staged substitution:
    each round solves the currently-affine subsystem exactly and substitutes
    every unknown it pins, which linearizes the rest.
    """
    if not skeleton.unknowns:
        raise ExtensionError("skeleton has no unknowns to solve for")
    current = skeleton
    assignment: dict[str, Scalar] = {}
    unknown_order = list(skeleton.unknowns)
    d = skeleton.sig.d

    for _round in range(len(unknown_order) + 2):
        eqs = [e for e in _normalization_equations(current) if not e.is_zero()]
        for e in eqs:
            if e.is_constant():
                raise NormalizationError("no normal extension for this skeleton")
        if not eqs:
            break
        remaining = [u for u in unknown_order if u not in assignment]
        affine = []
        nonlinear = []
        for e in eqs:
            aff = e.as_affine()
            (affine if aff is not None else nonlinear).append((e, aff))
        if not affine:
            raise NormalizationError(
                "normalization system is not affine in the remaining unknowns"
            )
        idx = {u: pos for pos, u in enumerate(remaining)}
        rows = []
        for _e, aff in affine:
            const, lin = aff
            coeffs = [_zero(d)] * len(remaining)
            for name, coeff in lin.items():
                coeffs[idx[name]] = coeff
            rows.append((coeffs, -const))
        space = solve_affine(rows, len(remaining), d=d)
        if space.is_empty:
            raise NormalizationError("no normal extension for this skeleton")
        pinned = {}
        for pos, name in enumerate(remaining):
            if all(direction[pos].is_zero() for direction in space.directions):
                pinned[name] = space.particular[pos]
        if not pinned:
            if nonlinear:
                raise NormalizationError(
                    "normalization system is stuck: quadratic residue with free gauge"
                )
            raise NormalizationError(
                f"normalization is underdetermined: gauge of dimension {space.dim} not fixed",
                kernel_dim=space.dim,
            )
        assignment.update(pinned)
        current = current.substitute(pinned)
    else:
        raise NormalizationError("normalization did not converge")

    leftovers = [u for u in unknown_order if u not in assignment]
    if leftovers:
        raise NormalizationError(
            f"normalization is underdetermined: {len(leftovers)} unknowns unconstrained",
            kernel_dim=len(leftovers),
        )
    solved = skeleton.substitute(assignment)
    # solver/checker agreement
    residual = kostant_codifferential(solved)
    if any(not v.is_zero() for v in residual.values()):
        raise NormalizationError("internal disagreement: solved map is not normal")
    if curvature(solved).escapes_p():
        raise NormalizationError("internal disagreement: solved curvature leaves p")
    return solved


# ---------------------------------------------------------------------------
# Symmetric-form skeleton
# ---------------------------------------------------------------------------


def symmetric_skeleton(
    k: LieAlg,
    sig: Signature,
    alpha_l: Mapping[int, SuElement] | None = None,
) -> Extension:
    """Extension skeleton in the distinguished symmetric form.

    The basis of k must be ordered (transversal; 2n paired tangent
    representatives; l-basis).  alpha maps the transversal to
    x = 1 with unknown even part (a, A in u(p, q), rho2) and the k-th
    representative pair to X = e_k / i e_k with unknown rho1 rows.
    """
    n, d = sig.n, sig.d
    alpha_l = dict(alpha_l or {})
    expected_l = k.dim - (2 * n + 1)
    if expected_l < 0 or sorted(alpha_l) != list(range(2 * n + 1, k.dim)):
        raise ExtensionError(
            "basis must be ordered (transversal, 2n representatives, l-basis), "
            "with alpha_l covering exactly the l-basis"
        )
    i_unit = Scalar.i(d=d)
    names: list[str] = []

    def var(name: str) -> Poly:
        names.append(name)
        return Poly.var(name, d=d)

    a_var = var("a")
    # A in u(p, q) with the csu trace tie: tr(A) = -2 i a
    diag: list[Poly] = []
    for kk in range(n - 1):
        diag.append(var(f"t{kk + 1}"))
    last = Poly.const(_zero(d), d=d) - (Scalar.rational(2, d=d) * a_var)
    for t in diag:
        last = last - t
    diag.append(last)
    signs = form_signs(sig)
    amat_entries: list[list[Entry]] = [[_zero(d)] * n for _ in range(n)]
    for kk in range(n):
        amat_entries[kk][kk] = i_unit * diag[kk]
    for j in range(n):
        for kk in range(j + 1, n):
            u = var(f"u{j + 1}{kk + 1}")
            v = var(f"v{j + 1}{kk + 1}")
            amat_entries[j][kk] = u + i_unit * v
            amat_entries[kk][j] = Scalar.rational(-signs[j] * signs[kk], d=d) * (
                u - i_unit * v
            )
    a_mat = Mat(amat_entries, d=d)
    rho2 = var("rho2")

    alphas: list[SuElement] = []
    transversal = assemble(
        GradedParts(
            sig,
            x=Scalar.rational(1, d=d),
            a=i_unit * a_var,
            A=a_mat,
            z=rho2,
        )
    )
    alphas.append(transversal)
    for s in range(2 * n):
        model_k = s // 2
        x_vec = [_zero(d)] * n
        x_vec[model_k] = Scalar.rational(1, d=d) if s % 2 == 0 else i_unit
        z_vec: list[Entry] = []
        for j in range(n):
            z_vec.append(var(f"p{s + 1}_{j + 1}") + i_unit * var(f"q{s + 1}_{j + 1}"))
        alphas.append(assemble(GradedParts(sig, X=x_vec, Z=z_vec)))
    for li in range(2 * n + 1, k.dim):
        alphas.append(alpha_l[li])
    return Extension(
        k,
        tuple(range(2 * n + 1, k.dim)),
        sig,
        tuple(alphas),
        tuple(names),
    )


# ---------------------------------------------------------------------------
# Structure checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetricFormReport:
    m_in_odd_part: bool
    l_in_u: bool
    h_in_even_part: bool
    offenders: tuple[str, ...] = ()

    @property
    def all_pass(self) -> bool:
        return self.m_in_odd_part and self.l_in_u and self.h_in_even_part


def check_symmetric_form(
    ext: Extension,
    h_basis: Sequence[Sequence[Scalar]],
    m_basis: Sequence[Sequence[Scalar]],
) -> SymmetricFormReport:
    """Verdicts for the three inclusions of the symmetric canonical form:
    alpha(m) in C^n + C^n*, alpha(l) in u(p, q),
    alpha(h) in R + csu(p, q) + R*."""
    k = ext.k
    all_rows = [list(v) for v in h_basis] + [list(v) for v in m_basis]
    if len(all_rows) != k.dim or rank(all_rows) != k.dim:
        raise ExtensionError("supplied split is not a vector-space decomposition of k")
    offenders = []

    def parts_of(vec):
        return ext.alpha_of(list(vec)).parts()

    m_ok = True
    for pos, vec in enumerate(m_basis):
        parts = parts_of(vec)
        even_free = (
            parts.x.is_zero()
            and parts.z.is_zero()
            and parts.a.is_zero()
            and parts.A.is_zero()
        )
        if not even_free:
            m_ok = False
            offenders.append(f"m[{pos}]: alpha lands outside C^n + C^n*")
    l_ok = True
    for li in ext.l_indices:
        parts = ext.alpha[li].parts()
        pure_g0 = (
            parts.x.is_zero()
            and parts.z.is_zero()
            and all(c.is_zero() for c in parts.X)
            and all(c.is_zero() for c in parts.Z)
        )
        _, coeff = u_pq_complement_split(parts.a, parts.A, ext.sig)
        if not (pure_g0 and coeff.is_zero()):
            l_ok = False
            offenders.append(f"l basis {ext.k.names[li]}: alpha not in u(p,q)")
    h_ok = True
    for pos, vec in enumerate(h_basis):
        parts = parts_of(vec)
        odd_free = all(c.is_zero() for c in parts.X) and all(c.is_zero() for c in parts.Z)
        if not odd_free:
            h_ok = False
            offenders.append(f"h[{pos}]: alpha lands outside R + csu + R*")
    return SymmetricFormReport(m_ok, l_ok, h_ok, tuple(offenders))


@dataclass(frozen=True)
class WeylDescriptor:
    """gamma(e_i) as endomorphisms of k/l (complement-basis coordinates)."""

    gamma: Mapping[int, Mat]
    l_action_consistent: bool
    offenders: tuple[str, ...] = ()


def invariant_weyl_descriptor(ext: Extension) -> WeylDescriptor:
    """gamma(X) = abar^{-1} o ad(grade-0 of alpha(X)) o abar.

    For l-basis elements gamma must reproduce the induced adjoint action on
    k/l; a mismatch means the l-image has grade-1 components incompatible
    with an invariant-connection reading, and is reported (not raised).
    """
    sig = ext.sig
    comp = ext.complement_indices
    m = 2 * sig.n + 1
    abar = _abar_matrix(ext)
    abar_inv = invert(abar)
    gamma: dict[int, Mat] = {}
    for i in range(ext.k.dim):
        g0 = grade_project(ext.alpha[i], 0)
        cols = []
        for pos, cj in enumerate(comp):
            image = g0.bracket(ext.alpha[cj])
            cols.append(gminus_coords(image))
        raw = Mat([[cols[c][r] for c in range(m)] for r in range(m)], d=sig.d)
        gamma[i] = abar_inv * raw
    offenders = []
    for li in ext.l_indices:
        # induced adjoint action on k/l: complement coordinates of [l, c_j]
        cols = []
        for cj in comp:
            coords = ext.k.bracket_basis(li, cj)
            cols.append([coords[c] for c in comp])
        ad_mat = Mat([[cols[c][r] for c in range(m)] for r in range(m)], d=sig.d)
        if gamma[li] != ad_mat:
            offenders.append(ext.k.names[li])
    return WeylDescriptor(gamma, not offenders, tuple(offenders))


def metrizability_check(ext: Extension) -> bool:
    """True iff no alpha image meets the grading-element direction, i.e. the
    whole image sits in R + C^n + u(p, q) + C^n* + R*."""
    for a in ext.alpha:
        parts = a.parts()
        _, coeff = u_pq_complement_split(parts.a, parts.A, ext.sig)
        if not coeff.is_zero():
            return False
    return True


def _require_normal(ext: Extension) -> None:
    if ext.unknowns:
        raise ExtensionError("extension still carries unknowns")
    problems = extension_problems(ext)
    if problems:
        raise ExtensionError("; ".join(p.message for p in problems))
    if curvature(ext).escapes_p():
        raise ExtensionError("curvature leaves the parabolic")
    residual = kostant_codifferential(ext)
    if any(not v.is_zero() for v in residual.values()):
        raise ExtensionError("extension is not normal")


def nijenhuis_check(ext: Extension) -> bool:
    """Integrability of the model complex structure on R + C^n + R.E_gr.

    J swaps the transversal direction with the grading-element direction
    (the transversal is the imaginary side) and acts by i on C^n.  For each
    basis pair the combination [X,Y] - [JX,JY] + J([JX,Y] + [X,JY]) must
    vanish modulo u(p,q) + C^n* + R*; the curvature corrections drop out of
    that quotient exactly when the extension is normal, which is required.
    """
    _require_normal(ext)
    sig = ext.sig
    n, d = sig.n, sig.d
    one = Scalar.rational(1, d=d)
    i_unit = Scalar.i(d=d)

    # V-coordinates: (t, x, Re X_1, Im X_1, ..., Re X_n, Im X_n) where t is
    # the grading-element coefficient
    dim_v = 2 * n + 2

    def pi(elem: SuElement) -> list[Scalar]:
        parts = elem.parts()
        _, coeff = u_pq_complement_split(parts.a, parts.A, sig)
        coords = [coeff, parts.x]
        for c in parts.X:
            coords.append(c.real())
            coords.append(c.imag())
        return coords

    def embed(coords: Sequence[Scalar]) -> SuElement:
        x_vec = [coords[2 + 2 * k] + i_unit * coords[3 + 2 * k] for k in range(n)]
        return grading_element(sig).scale(coords[0]) + assemble(
            GradedParts(sig, x=coords[1], X=x_vec)
        )

    def j_map(coords: Sequence[Scalar]) -> list[Scalar]:
        # J(E_gr) = xi_x, J(xi_x) = -E_gr, J = i on C^n
        out = [-coords[1], coords[0]]
        for k in range(n):
            re, im = coords[2 + 2 * k], coords[3 + 2 * k]
            out.extend([-im, re])
        return out

    basis = []
    for j in range(dim_v):
        coords = [_zero(d)] * dim_v
        coords[j] = one
        basis.append(coords)

    for bi in range(dim_v):
        for bj in range(bi + 1, dim_v):
            xe = embed(basis[bi])
            ye = embed(basis[bj])
            jxe = embed(j_map(basis[bi]))
            jye = embed(j_map(basis[bj]))
            term = [a - b for a, b in zip(pi(xe.bracket(ye)), pi(jxe.bracket(jye)))]
            cross = [
                a + b for a, b in zip(pi(jxe.bracket(ye)), pi(xe.bracket(jye)))
            ]
            total = [a + b for a, b in zip(term, j_map(cross))]
            if any(not c.is_zero() for c in total):
                return False

    # normality makes the curvature corrections invisible in the quotient;
    # verify that directly on the curvature table
    for value in curvature(ext).values.values():
        parts = value.parts()
        _, coeff = u_pq_complement_split(parts.a, parts.A, sig)
        if not coeff.is_zero():
            return False
        if not (parts.x.is_zero() and all(c.is_zero() for c in parts.X)):
            return False
    return True
