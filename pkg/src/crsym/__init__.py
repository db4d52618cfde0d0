"""crsym: exact-arithmetic toolkit for symmetric CR geometries of
hypersurface type (graded su(p+1, q+1) model, symmetry enumeration,
extension curvature and normalization, CR-algebra pipeline)."""

from .scalars import Poly, Scalar
from .linalg import AffineSpace, Mat, bracket, conj_transpose, solve_affine
from .sualg import (
    GradedParts,
    Signature,
    SuElement,
    assemble,
    grade_project,
    grading_element,
    hermitian_form_matrix,
    levi_form,
    trace_form,
    u_pq_complement_split,
)

__version__ = "0.1.0"
