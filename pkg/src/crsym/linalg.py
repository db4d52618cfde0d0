"""Dense exact matrices over Q(i, sqrt(d)) and affine system solving.

Gaussian elimination pivots on the first nonzero entry (no magnitude
heuristics: the field is exact), so every routine here is deterministic.
Solution spaces are returned in full: a particular point plus a kernel basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .scalars import Entry, Poly, Scalar, entry_conj

__all__ = [
    "Mat",
    "AffineSpace",
    "LinalgError",
    "bracket",
    "conj_transpose",
    "solve_affine",
    "solve_linear_system",
    "kernel_basis",
    "rank",
    "invert",
    "symmetric_signature",
]


class LinalgError(ValueError):
    pass


def _zero(d: int) -> Scalar:
    return Scalar.rational(0, d=d)


def _one(d: int) -> Scalar:
    return Scalar.rational(1, d=d)


class Mat:
    """A rectangular matrix with Scalar or Poly entries."""

    __slots__ = ("rows", "cols", "entries", "d")

    def __init__(self, entries: Sequence[Sequence[Entry]], d: int = 2):
        rows = len(entries)
        if rows == 0:
            raise LinalgError("matrix must have at least one row")
        cols = len(entries[0])
        grid = []
        for row in entries:
            if len(row) != cols:
                raise LinalgError("ragged matrix rows")
            grid.append(tuple(
                e if isinstance(e, (Scalar, Poly)) else Scalar.rational(e, d=d)
                for e in row
            ))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(grid))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, d: int = 2) -> Mat:
        z = _zero(d)
        return cls([[z] * cols for _ in range(rows)], d=d)

    @classmethod
    def identity(cls, n: int, d: int = 2) -> Mat:
        z, o = _zero(d), _one(d)
        return cls([[o if j == k else z for k in range(n)] for j in range(n)], d=d)

    @classmethod
    def unit(cls, n: int, j: int, k: int, value: Entry | int = 1, d: int = 2) -> Mat:
        """n x n matrix with a single entry at (j, k), zero-indexed."""
        m = [[_zero(d)] * n for _ in range(n)]
        m[j][k] = value if isinstance(value, (Scalar, Poly)) else Scalar.rational(value, d=d)
        return cls(m, d=d)

    @classmethod
    def diag(cls, values: Sequence[Entry | int], d: int = 2) -> Mat:
        n = len(values)
        m = [[_zero(d)] * n for _ in range(n)]
        for j, v in enumerate(values):
            m[j][j] = v if isinstance(v, (Scalar, Poly)) else Scalar.rational(v, d=d)
        return cls(m, d=d)

    # -- basic access ------------------------------------------------------

    def __getitem__(self, jk: tuple[int, int]) -> Entry:
        j, k = jk
        return self.entries[j][k]

    def row(self, j: int) -> tuple[Entry, ...]:
        return self.entries[j]

    def col(self, k: int) -> tuple[Entry, ...]:
        return tuple(self.entries[j][k] for j in range(self.rows))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def has_poly(self) -> bool:
        return any(isinstance(e, Poly) for row in self.entries for e in row)

    def map(self, fn: Callable[[Entry], Entry]) -> Mat:
        return Mat([[fn(e) for e in row] for row in self.entries], d=self.d)

    # -- arithmetic --------------------------------------------------------

    def _check_same_shape(self, other: Mat) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinalgError(
                f"dimension mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: Mat) -> Mat:
        self._check_same_shape(other)
        return Mat(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            d=self.d,
        )

    def __sub__(self, other: Mat) -> Mat:
        self._check_same_shape(other)
        return Mat(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            d=self.d,
        )

    def __neg__(self) -> Mat:
        return self.map(lambda e: -e)

    def scale(self, s: Entry | int) -> Mat:
        if not isinstance(s, (Scalar, Poly)):
            s = Scalar.rational(s, d=self.d)
        return self.map(lambda e: s * e)

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise LinalgError(
                    f"dimension mismatch in product: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
                )
            zero = _zero(self.d)
            out = []
            for j in range(self.rows):
                row = []
                for k in range(other.cols):
                    acc: Entry = zero
                    for l in range(self.cols):
                        a = self.entries[j][l]
                        b = other.entries[l][k]
                        if a.is_zero() or b.is_zero():
                            continue
                        acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Mat(out, d=self.d)
        if isinstance(other, (Scalar, Poly, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, Poly, int)):
            return self.scale(other)
        return NotImplemented

    def trace(self) -> Entry:
        if not self.is_square():
            raise LinalgError("trace of non-square matrix")
        acc: Entry = _zero(self.d)
        for j in range(self.rows):
            acc = acc + self.entries[j][j]
        return acc

    def transpose(self) -> Mat:
        return Mat(
            [[self.entries[j][k] for j in range(self.rows)] for k in range(self.cols)],
            d=self.d,
        )

    def substitute(self, assignment) -> Mat:
        def sub(e: Entry) -> Entry:
            if isinstance(e, Poly):
                out = e.substitute(assignment)
                if out.is_constant():
                    return out.constant_part()
                return out
            return e

        return self.map(sub)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2)
        )

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(str(e) for e in row) for row in self.entries
        )
        return f"Mat[{body}]"


def bracket(a: Mat, b: Mat) -> Mat:
    """Commutator AB - BA; both matrices must be square of equal size."""
    if not (a.is_square() and b.is_square() and a.rows == b.rows):
        raise LinalgError("bracket requires square matrices of equal size")
    return a * b - b * a


def conj_transpose(a: Mat) -> Mat:
    """Conjugate transpose; rejects polynomial entries (conjugation of
    unknowns is undefined without a reality contract)."""
    if a.has_poly():
        raise LinalgError("conj_transpose is undefined for polynomial entries")
    return Mat(
        [[a.entries[j][k].conj() for j in range(a.rows)] for k in range(a.cols)],
        d=a.d,
    )


def entrywise_star(a: Mat) -> Mat:
    """Conjugate transpose extended to Poly entries via the real-unknown
    contract; internal helper for the graded-model machinery."""
    return Mat(
        [[entry_conj(a.entries[j][k]) for j in range(a.rows)] for k in range(a.cols)],
        d=a.d,
    )


# ---------------------------------------------------------------------------
# Exact elimination
# ---------------------------------------------------------------------------


def _rref(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for j in range(r, len(rows)):
            if not rows[j][c].is_zero():
                pivot_row = j
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [inv * e for e in rows[r]]
        for j in range(len(rows)):
            if j != r and not rows[j][c].is_zero():
                f = rows[j][c]
                rows[j] = [a - f * b for a, b in zip(rows[j], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: Iterable[Sequence[Scalar]]) -> int:
    work = [list(r) for r in rows]
    if not work:
        return 0
    _, pivots = _rref(work)
    return len(pivots)


def kernel_basis(rows: Iterable[Sequence[Scalar]], ncols: int, d: int = 2) -> list[list[Scalar]]:
    """Basis of the right kernel, in free-column order."""
    work = [list(r) for r in rows]
    if work:
        work, pivots = _rref(work)
    else:
        pivots = []
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    zero, one = _zero(d), _one(d)
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class AffineSpace:
    """An affine subspace of F^ambient: particular point + direction basis.

    ``particular is None`` encodes the empty set.  Directions are linearly
    independent; ``dim`` is their count.
    """

    ambient: int
    particular: "tuple[Scalar, ...] | None"
    directions: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def empty(cls, ambient: int) -> AffineSpace:
        return cls(ambient, None, ())

    @classmethod
    def point(cls, coords: Sequence[Scalar]) -> AffineSpace:
        return cls(len(coords), tuple(coords), ())

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def dim(self) -> int:
        if self.is_empty:
            return -1
        return len(self.directions)

    def points(self, coefficients: Sequence[int] = (0, 1, -1)) -> list[tuple[Scalar, ...]]:
        """Sample points: the particular one plus particular +/- each direction."""
        if self.is_empty:
            return []
        pts = [self.particular]
        for direction in self.directions:
            for c in coefficients:
                if c == 0:
                    continue
                pts.append(tuple(p + Scalar.rational(c) * v for p, v in zip(self.particular, direction)))
        return pts

    def contains(self, point: Sequence[Scalar], d: int = 2) -> bool:
        if self.is_empty:
            return False
        diff = [p - q for p, q in zip(point, self.particular)]
        if not self.directions:
            return all(e.is_zero() for e in diff)
        # solvability of directions^T * x = diff
        cols = [list(v) for v in self.directions]
        rows = [[cols[c][r] for c in range(len(cols))] + [diff[r]] for r in range(self.ambient)]
        work, pivots = _rref(rows)
        return len(cols) not in pivots

    def same_set(self, other: AffineSpace) -> bool:
        if self.ambient != other.ambient:
            return False
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        if self.dim != other.dim:
            return False
        if not other.contains(self.particular):
            return False
        for direction in self.directions:
            shifted = tuple(p + v for p, v in zip(self.particular, direction))
            if not other.contains(shifted):
                return False
        return True


def solve_affine(
    equations: Sequence[tuple[Sequence[Scalar], Scalar]],
    ambient: int,
    d: int = 2,
) -> AffineSpace:
    """Exact solution set of a system of affine equations sum_j c_j x_j = rhs.

    Coefficients are expected real (the caller splits complex conditions into
    real and imaginary parts); the math works over the full field regardless.
    """
    zero = _zero(d)
    aug = []
    for coeffs, rhs in equations:
        if len(coeffs) != ambient:
            raise LinalgError(f"equation arity {len(coeffs)} != ambient {ambient}")
        aug.append(list(coeffs) + [rhs])
    if not aug:
        part = tuple([zero] * ambient)
        dirs = tuple(tuple(_one(d) if j == k else zero for k in range(ambient)) for j in range(ambient))
        return AffineSpace(ambient, part, dirs)
    work, pivots = _rref(aug)
    if ambient in pivots:
        return AffineSpace.empty(ambient)
    particular = [zero] * ambient
    coeff_pivots = [c for c in pivots if c < ambient]
    for r, pc in enumerate(coeff_pivots):
        particular[pc] = work[r][ambient]
    directions = kernel_basis([row[:ambient] for row in work], ambient, d=d)
    return AffineSpace(ambient, tuple(particular), tuple(tuple(v) for v in directions))


def solve_linear_system(a: Mat, b: Sequence[Scalar]) -> "list[Scalar] | None":
    """One solution of A x = b, or None if inconsistent."""
    eqs = [(list(a.row(j)), b[j]) for j in range(a.rows)]
    space = solve_affine(eqs, a.cols, d=a.d)
    if space.is_empty:
        return None
    return list(space.particular)


def invert(a: Mat) -> Mat:
    if not a.is_square():
        raise LinalgError("inverse of non-square matrix")
    if a.has_poly():
        raise LinalgError("inverse of polynomial matrix is not supported")
    n = a.rows
    zero, one = _zero(a.d), _one(a.d)
    aug = [list(a.row(j)) + [one if k == j else zero for k in range(n)] for j in range(n)]
    work, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise LinalgError("matrix is singular")
    return Mat([row[n:] for row in work], d=a.d)


def symmetric_signature(gram: Mat) -> tuple[int, int]:
    """Exact signature (n_plus, n_minus) of a symmetric real-entry matrix."""
    n = gram.rows
    if not gram.is_square():
        raise LinalgError("signature of non-square matrix")
    work = [[gram[j, k] for k in range(n)] for j in range(n)]
    for j in range(n):
        for k in range(n):
            if not work[j][k].is_real():
                raise LinalgError("signature requires real entries")
            if work[j][k] != work[k][j]:
                raise LinalgError("signature requires a symmetric matrix")
    pos = neg = 0
    idx = list(range(n))
    while idx:
        # symmetric pivoting on the first nonzero diagonal entry
        pivot = None
        for j in idx:
            if not work[j][j].is_zero():
                pivot = j
                break
        if pivot is None:
            hyper = None
            for j in idx:
                for k in idx:
                    if j < k and not work[j][k].is_zero():
                        hyper = (j, k)
                        break
                if hyper:
                    break
            if hyper is None:
                break  # remaining block is zero
            j, k = hyper
            # row/col addition makes the (j, j) entry nonzero: 2 * work[j][k]
            for c in range(n):
                work[j][c] = work[j][c] + work[k][c]
            for r in range(n):
                work[r][j] = work[r][j] + work[r][k]
            pivot = j
        pj = pivot
        sign = work[pj][pj].real_sign()
        if sign > 0:
            pos += 1
        else:
            neg += 1
        inv = work[pj][pj].inv()
        others = [j for j in idx if j != pj]
        for r in others:
            f = work[r][pj] * inv
            if f.is_zero():
                continue
            for c in range(n):
                work[r][c] = work[r][c] - f * work[pj][c]
            for c in range(n):
                work[c][r] = work[c][r] - f * work[c][pj]
        idx.remove(pj)
    return pos, neg
