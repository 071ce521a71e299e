"""Exact construction, verification, and classification of the
finite-dimensional modules of a three-generator anticommutator algebra.

The package is organised in four layers:

``exactlinalg``
    Dense rational matrices and polynomials: rref, kernels, spinning,
    characteristic and minimal polynomials, rational root finding.
``bimodule``
    The two explicit module families (even and odd dimension), the sign
    twists, relation checking, and the pinned worked examples.
``classify``
    Irreducibility two independent ways (closed-form criterion and a
    computational oracle), isomorphism testing with explicit intertwiners,
    the lowering matrix, and identification of a module's class coordinates.
``universal``
    Ladder-basis windows of the infinite-dimensional parent module and the
    maps relating them to the finite families.

Everything is computed over the rationals; no floating point anywhere.
"""

from .bimodule import (
    ALL_TWISTS,
    BIModule,
    EvenParams,
    NotAModule,
    OddParams,
    TwistSign,
    central_scalars,
    check_relations,
    derive_Z,
    diagonalizability,
    even_module,
    example_even,
    example_odd,
    minimal_polynomials,
    odd_module,
    sequences,
    twist,
)
from .classify import (
    ClassCoordinates,
    IdentificationFailed,
    IndeterminateIsomorphism,
    InvariantData,
    IrrVerdict,
    NonSplitSpectrum,
    NotRationalFamily,
    a_flip_basis_matrices,
    are_isomorphic,
    criterion_even,
    criterion_odd,
    criterion_verdict,
    identify,
    intertwiner_space,
    invariants,
    lowering_matrix,
    odd_twist_check,
    oracle_irreducible,
    orbit_canonical,
    verify_invariant_subspace,
)
from .exactlinalg import (
    Matrix,
    Poly,
    Roots,
    anticommutator,
    char_poly,
    is_squarefree,
    kernel_basis,
    min_poly,
    rat,
    rational_roots,
    rational_spectrum,
    spin,
)
from .universal import (
    AnnihilatorFails,
    PremiseViolated,
    TruncatedVerma,
    descend_to_even,
    interior_relation_check,
    ladder_vector,
    truncated_verma,
    universal_map,
    verma_quotient_check,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_TWISTS",
    "AnnihilatorFails",
    "BIModule",
    "ClassCoordinates",
    "EvenParams",
    "IdentificationFailed",
    "IndeterminateIsomorphism",
    "InvariantData",
    "IrrVerdict",
    "Matrix",
    "NonSplitSpectrum",
    "NotAModule",
    "NotRationalFamily",
    "OddParams",
    "Poly",
    "PremiseViolated",
    "Roots",
    "TruncatedVerma",
    "TwistSign",
    "a_flip_basis_matrices",
    "anticommutator",
    "are_isomorphic",
    "central_scalars",
    "char_poly",
    "check_relations",
    "criterion_even",
    "criterion_odd",
    "criterion_verdict",
    "derive_Z",
    "descend_to_even",
    "diagonalizability",
    "even_module",
    "example_even",
    "example_odd",
    "identify",
    "interior_relation_check",
    "intertwiner_space",
    "invariants",
    "is_squarefree",
    "kernel_basis",
    "ladder_vector",
    "lowering_matrix",
    "min_poly",
    "minimal_polynomials",
    "odd_module",
    "odd_twist_check",
    "oracle_irreducible",
    "orbit_canonical",
    "rat",
    "rational_roots",
    "rational_spectrum",
    "sequences",
    "spin",
    "truncated_verma",
    "twist",
    "universal_map",
    "verify_invariant_subspace",
    "verma_quotient_check",
]
