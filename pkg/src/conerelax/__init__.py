"""Spectrahedral representations and membership oracles for derivative
relaxations of the positive semidefinite cone.

The first derivative relaxation of the PSD cone equals the set of symmetric
X whose trace-form matrix B(X), with entries tr(B_i X B_j) over any basis
B_1..B_d of the trace-zero subspace, is positive semidefinite.  This package
builds that representation and its relatives (derivative relaxations of
cones with definite determinantal descriptions, the second derivative
relaxation of the orthant, the quadratic relaxation cone), provides
independent eigenvalue- and root-based membership oracles with
non-membership certificates, and numerically verifies the determinantal
identities behind the construction.
"""

from .basisgen import (
    OnesPerpBasis,
    TracelessBasis,
    canonical_traceless_basis,
    conjugate_basis,
    custom_traceless_basis,
    gram,
    ones_perp_basis,
    orthonormalize,
    traceless_dim,
)
from .bmap import (
    LmiSystem,
    bmap_lmi,
    bmatrix,
    derivative_cone_lmi,
    lmi_to_json_dict,
    orthant2_lmi,
    quad_cone_lmi,
    quad_cone_matrix,
    write_lmi_json,
    write_sdpa_sparse,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ConeRelaxError,
    DegenerateBasisError,
    DegenerateSamplingError,
    NotPositiveDefiniteError,
    NumericalFailureError,
)
from .oracles import (
    Verdict,
    in_dorthant,
    in_dpsd,
    in_psd,
    in_qcone,
    in_quadcone_closed,
    in_s1_repr,
    witness_check,
)
from .symlinalg import (
    MonicPoly,
    Spectrum,
    big_E,
    char_poly,
    eigh,
    elem_sym,
    inv_sqrt,
    poly_derivative,
    poly_from_roots,
    real_roots_interlaced,
    symmetric,
)
from .verify import (
    IdentityReport,
    block_structure_check,
    main_identity,
    majorization_check,
    q_eval,
    sanyal_constant,
    slice_lemma_check,
)

__version__ = "0.1.0"

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "ConeRelaxError",
    "NumericalFailureError",
    "NotPositiveDefiniteError",
    "DegenerateBasisError",
    "DegenerateSamplingError",
    "symmetric",
    "Spectrum",
    "eigh",
    "elem_sym",
    "big_E",
    "MonicPoly",
    "poly_from_roots",
    "char_poly",
    "poly_derivative",
    "real_roots_interlaced",
    "inv_sqrt",
    "traceless_dim",
    "OnesPerpBasis",
    "ones_perp_basis",
    "TracelessBasis",
    "canonical_traceless_basis",
    "custom_traceless_basis",
    "orthonormalize",
    "gram",
    "conjugate_basis",
    "LmiSystem",
    "bmatrix",
    "bmap_lmi",
    "derivative_cone_lmi",
    "orthant2_lmi",
    "quad_cone_matrix",
    "quad_cone_lmi",
    "lmi_to_json_dict",
    "write_lmi_json",
    "write_sdpa_sparse",
    "Verdict",
    "in_psd",
    "in_dpsd",
    "in_dorthant",
    "in_qcone",
    "in_s1_repr",
    "witness_check",
    "in_quadcone_closed",
    "IdentityReport",
    "q_eval",
    "sanyal_constant",
    "main_identity",
    "block_structure_check",
    "majorization_check",
    "slice_lemma_check",
    "__version__",
]
