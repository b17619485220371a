"""Symplectic spectra of positive definite matrices.

The package computes symplectic eigenvalues and the associated
diagonalizing transforms, builds structured bases and subspace chains
around them, and certifies the eigenvalue inequalities those
constructions imply: two-sided extremal characterizations for sums,
products, and Schur-concave functionals, plus additive and
multiplicative perturbation bounds for sums and geometric means.
"""

from ._version import __version__
from .basis import (
    BDiagonalOperator,
    SymplecticBasis,
    b_complement,
    b_gram_schmidt,
    b_inner,
    chain_extend,
    dual_chain_construct,
    is_isotropic,
    prime_coords,
    prime_subspace,
    same_span_trace_check,
    subspace_prime_sharp,
    symplectic_complement,
)
from .core import (
    WilliamsonDecomposition,
    apply_form,
    as_generator,
    compress,
    condition_number,
    eigenpair_residual,
    random_pd,
    random_symplectic,
    symplectic_eigenvalues,
    symplectic_form,
    symplectic_gram,
    symplectic_inner,
    tuple_form_defect,
    williamson,
)
from .errors import (
    ConstructionError,
    MatrixFormatError,
    NumericalContractError,
    ValidationError,
)
from .extremal import (
    ExtremalCertificate,
    canonical_chains,
    det_product_check,
    maxmin_check,
    phi_extremal_check,
    poincare_witness,
    sample_tuple_in_chain,
    tuple_value,
    wielandt_certify,
)
from .functionals import (
    SHIPPED,
    SpectralFunctional,
    elementary_symmetric,
    phi_esym2,
    phi_min,
    phi_product,
    phi_sum,
)
from .harness import SUITE_IDS, SuiteConfig, replay, run_all, run_suite, trial_rng
from .inequalities import (
    InequalityRecord,
    additive_lidskii_suite,
    additive_lidskii_trial,
    geometric_mean,
    majorize,
    multiplicative_lidskii_suite,
    multiplicative_lidskii_trial,
    polar_factor_check,
    schur_concave_monotone_check,
    supermajorize,
)
from .matio import load_matrix, matrix_from_obj, matrix_to_obj, save_matrix, save_williamson

__all__ = [
    "BDiagonalOperator",
    "ConstructionError",
    "ExtremalCertificate",
    "InequalityRecord",
    "MatrixFormatError",
    "NumericalContractError",
    "SHIPPED",
    "SUITE_IDS",
    "SpectralFunctional",
    "SuiteConfig",
    "SymplecticBasis",
    "ValidationError",
    "WilliamsonDecomposition",
    "__version__",
    "additive_lidskii_suite",
    "additive_lidskii_trial",
    "apply_form",
    "as_generator",
    "b_complement",
    "b_gram_schmidt",
    "b_inner",
    "canonical_chains",
    "chain_extend",
    "compress",
    "condition_number",
    "det_product_check",
    "dual_chain_construct",
    "eigenpair_residual",
    "elementary_symmetric",
    "geometric_mean",
    "is_isotropic",
    "load_matrix",
    "majorize",
    "matrix_from_obj",
    "matrix_to_obj",
    "maxmin_check",
    "multiplicative_lidskii_suite",
    "multiplicative_lidskii_trial",
    "phi_esym2",
    "phi_extremal_check",
    "phi_min",
    "phi_product",
    "phi_sum",
    "poincare_witness",
    "polar_factor_check",
    "prime_coords",
    "prime_subspace",
    "random_pd",
    "random_symplectic",
    "replay",
    "run_all",
    "run_suite",
    "same_span_trace_check",
    "sample_tuple_in_chain",
    "save_matrix",
    "save_williamson",
    "schur_concave_monotone_check",
    "subspace_prime_sharp",
    "supermajorize",
    "symplectic_complement",
    "symplectic_eigenvalues",
    "symplectic_form",
    "symplectic_gram",
    "symplectic_inner",
    "trial_rng",
    "tuple_form_defect",
    "tuple_value",
    "wielandt_certify",
    "williamson",
]
