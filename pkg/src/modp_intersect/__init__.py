"""Exact bounds, rank certificates and extremal search for families of sets
with restricted sizes and pairwise intersections modulo a prime."""

from .bounds import (
    BinomialBasisPoly,
    BoundEntry,
    BoundReport,
    IntersectionSpec,
    TheoremTag,
    applicability,
    binom,
    binom_sum,
    bound_value,
    hk_inequality_check,
    pascal_equivalence_check,
    strengthening_check,
    to_binomial_basis,
)
from .errors import (
    BadIndexSet,
    CaseMismatch,
    DegreeTooLarge,
    FormatError,
    HypothesisUnmet,
    Inapplicable,
    InvalidFamily,
    MixedContext,
    ModpError,
    NotASubspace,
    PreconditionUnmet,
    RankDeficit,
    StepFailure,
    TooLarge,
    UnknownTag,
    ZeroInverse,
)
from .families import (
    LinearFormSystem,
    SetFamily,
    ValidationReport,
    build_inclusion_system,
    check_dimension_recursion,
    check_level_elimination,
    check_quotient_count,
    check_trivial_kernel,
    dimension_upper_bound,
    family_from_json,
    family_to_json,
    read_family,
    validate,
    write_family,
)
from .gfp import (
    FieldElement,
    MatrixFp,
    PrimeModulus,
    field_inverse,
    is_prime,
    kernel_basis,
    quotient_dimension,
    rank,
)
from .polycert import (
    Certificate,
    CertificateKind,
    GapCase,
    GapStructure,
    MultilinearPoly,
    anchor_poly,
    build_certificate,
    case4_certificate,
    check_gap_lemma,
    dimension_certificate,
    gap_structure,
    independence_certificate,
    member_poly,
    poly_mul_reduce,
    size_window,
    verify_certificate,
    window_poly,
)
from .search import (
    CandidateCatalog,
    CompatibilityGraph,
    SearchResult,
    SweepRow,
    build_compatibility_graph,
    enumerate_candidates,
    greedy_family,
    max_family,
    spec_grid,
    sweep,
    sweep_to_csv,
)

__version__ = "0.1.0"
