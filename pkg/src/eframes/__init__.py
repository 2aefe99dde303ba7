"""Frame analysis over invertible matrix mappings on C^d.

The library computes frame and controlled-frame bounds, canonical and
parametrized dual families, and Neumann-series corrections for
approximate duals, all at finite-section scale (dense complex matrices,
sequences as (N, d) arrays).
"""

from . import controlled, eframe, gallery, hilbert, mapping, neumann
from .controlled import (
    CONTROLLED_FRAME,
    INVALID,
    ControlledEFrame,
    DualCertificate,
    IdentityReport,
    RieszEquivalenceReport,
    canonical_dual,
    canonical_reconstruct,
    commutation_criterion,
    controlled_bounds,
    controlled_frame_operator,
    controlled_synthesis,
    dual_from_right_inverse,
    dual_with_offset,
    extract_null_map,
    identity_errors,
    is_parseval,
    random_null_map,
    random_right_inverse,
    riesz_equivalence,
    verify_dual,
)
from .eframe import (
    BESSEL_ONLY,
    FRAME,
    NOT_BESSEL,
    EFrameRecord,
    e_analysis,
    e_canonical_dual,
    e_frame_bounds,
    e_frame_operator,
    e_reconstruct,
    e_riesz_family,
    e_synthesis,
)
from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    DualConditionError,
    NotAFrameError,
    NotHermitianError,
    SingularOperatorError,
)
from .hilbert import (
    DEFAULT_TOL,
    SpectralBounds,
    adjoint,
    hermitian_bounds,
    inner,
    invert_operator,
    is_positive_definite,
    operator_norm,
    pseudoinverse,
)
from .mapping import (
    MatrixMapping,
    apply_inverse_mapping,
    apply_mapping,
    build_banded,
    build_bidiagonal,
    build_dense,
    identity_mapping,
)
from .neumann import (
    NeumannReport,
    contraction_ratio,
    corrected_dual,
    iterative_reconstruct,
)

__version__ = "0.1.0"
