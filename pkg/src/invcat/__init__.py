"""Finite inverse categories with verified exactness structure.

The package models categories in which every morphism has a unique
quasi-inverse, checks the annihilator and exactness laws by exhaustive
enumeration, and implements the three ways a morphism moves projections
around (direct image, inverse image, strict preimage) together with the
law catalog each of them satisfies.
"""

from .core import (
    Budget,
    BudgetExceededError,
    CompositionError,
    Enumeration,
    FiniteCategory,
    InvcatError,
    LatticeError,
    Morphism,
    NotInverseCategoryError,
    ObjectMismatchError,
    Projection,
    ShapeMismatchError,
    TableCategory,
    ZeroUnavailableError,
    check_inverse_category,
    involution,
    is_generalized_inverse,
    is_projection,
    quasi_inverses,
    render_morphism,
    render_object,
)
from .exactness import (
    CommutingSquare,
    Factorization,
    NoCokernelError,
    NoFactorizationError,
    NoKernelError,
    NonCommutingSquareError,
    NotMonoError,
    check_coherence,
    check_exactness,
    check_normal_conormal,
    cokernel,
    is_epi,
    is_iso,
    is_mono,
    is_pullback,
    kernel,
    mono_epi_factorize,
    pullback_witness,
)
from .monoid import (
    InverseMonoid,
    MonoidAxiomError,
    TableShapeError,
    chain_semilattice,
    classify_exactness,
    cyclic_group,
    is_group,
    symmetric_inverse_monoid,
    two_object_category,
    validate_inverse_monoid,
)
from .pbij import (
    FinSet,
    PBijCategory,
    PBijValidationError,
    canonical_pbij_category,
    compose_pbij,
    enumerate_pbij,
    hom_count,
    identity_pbij,
    inclusion,
    invert_pbij,
    make_pbij,
    partial_identity,
    size_finset,
    subset_projection,
)
from .projections import (
    AnnihilatorNotFoundError,
    NotBaerStarError,
    ProjectionLattice,
    annihilator,
    check_baer_star,
    double_annihilator,
    is_closed,
    leq,
    meet,
    projection_lattice,
    projections_on,
)
from .report import (
    EXIT_BUDGET_EXCEEDED,
    EXIT_CLAUSE_FAILURES,
    EXIT_INVALID_INPUT,
    EXIT_OK,
    FAIL,
    PASS,
    SKIPPED,
    Clause,
    VerificationReport,
    merge_reports,
)
from .specfile import (
    CategorySpec,
    SpecFormatError,
    build_category,
    dumps_spec,
    load_monoid_table,
    load_spec,
    loads_spec,
    parse_spec,
    serialize_spec,
)
from .transfer import (
    TransferKind,
    TransferMap,
    apply_P,
    apply_Pdoubleprime,
    apply_Pprime,
    check_closed_forms,
    check_connections,
    check_functoriality,
    check_theorems_P,
    check_theorems_Pdoubleprime,
    check_theorems_Pprime,
    image_of,
    inverse_image_of,
    theorem_suite,
    transfer,
    transfer_table,
)

__version__ = "0.1.0"

__all__ = [
    "AnnihilatorNotFoundError",
    "Budget",
    "BudgetExceededError",
    "CategorySpec",
    "Clause",
    "CommutingSquare",
    "CompositionError",
    "EXIT_BUDGET_EXCEEDED",
    "EXIT_CLAUSE_FAILURES",
    "EXIT_INVALID_INPUT",
    "EXIT_OK",
    "Enumeration",
    "FAIL",
    "Factorization",
    "FinSet",
    "FiniteCategory",
    "InvcatError",
    "InverseMonoid",
    "LatticeError",
    "MonoidAxiomError",
    "Morphism",
    "NoCokernelError",
    "NoFactorizationError",
    "NoKernelError",
    "NonCommutingSquareError",
    "NotBaerStarError",
    "NotInverseCategoryError",
    "NotMonoError",
    "ObjectMismatchError",
    "PASS",
    "PBijCategory",
    "PBijValidationError",
    "Projection",
    "ProjectionLattice",
    "SKIPPED",
    "ShapeMismatchError",
    "SpecFormatError",
    "TableCategory",
    "TableShapeError",
    "TransferKind",
    "TransferMap",
    "VerificationReport",
    "ZeroUnavailableError",
    "annihilator",
    "apply_P",
    "apply_Pdoubleprime",
    "apply_Pprime",
    "build_category",
    "canonical_pbij_category",
    "chain_semilattice",
    "check_baer_star",
    "check_closed_forms",
    "check_coherence",
    "check_connections",
    "check_exactness",
    "check_functoriality",
    "check_inverse_category",
    "check_normal_conormal",
    "check_theorems_P",
    "check_theorems_Pdoubleprime",
    "check_theorems_Pprime",
    "classify_exactness",
    "cokernel",
    "compose_pbij",
    "cyclic_group",
    "double_annihilator",
    "dumps_spec",
    "enumerate_pbij",
    "hom_count",
    "identity_pbij",
    "image_of",
    "inclusion",
    "inverse_image_of",
    "invert_pbij",
    "involution",
    "is_closed",
    "is_epi",
    "is_generalized_inverse",
    "is_group",
    "is_iso",
    "is_mono",
    "is_projection",
    "is_pullback",
    "kernel",
    "leq",
    "load_monoid_table",
    "load_spec",
    "loads_spec",
    "make_pbij",
    "meet",
    "merge_reports",
    "mono_epi_factorize",
    "parse_spec",
    "partial_identity",
    "projection_lattice",
    "projections_on",
    "pullback_witness",
    "quasi_inverses",
    "render_morphism",
    "render_object",
    "serialize_spec",
    "size_finset",
    "subset_projection",
    "symmetric_inverse_monoid",
    "theorem_suite",
    "transfer",
    "transfer_table",
    "two_object_category",
    "validate_inverse_monoid",
]
