"""Exact construction, verification, and exploration of circular
Hessenberg systems over rationals, prime fields, and quotient extensions."""

from .fields import (
    FieldElement,
    FieldSpec,
    PrimeField,
    QuotientExtension,
    Rationals,
    cyclotomic_field,
    field_from_json,
    field_from_string,
    field_to_string,
    prime_field,
    primitive_root_of_unity,
    quotient_extension,
    rationals,
)
from .linalg import (
    Matrix,
    ShapeClass,
    Vector,
    commutator,
    determinant,
    eigenvalues_bruteforce,
    matrix_inverse,
    primitive_idempotents,
    shape_classify,
)
from .systems import (
    CHSystem,
    ParameterArray,
    SplitDecomposition,
    VerificationOutcome,
    cyclic_irreducibility_check,
    dual_system,
    extract_parameter_array,
    ingest_pair,
    isomorphic,
    isomorphism_witness,
    split_form_build,
    verify_ch_axioms,
)
from .recurrence import (
    RecurrenceCase,
    RecurrenceClosedForm,
    RecurrenceStatus,
    TridiagonalWitness,
    VarthetaSequence,
    fit_closed_form,
    is_beta_recurrent,
    recurrence_status,
    recurrent_quotient,
    td_witness,
    vartheta_from_array,
)
from .families import (
    Classification,
    Family,
    FamilyParameters,
    classify_family,
    family_beta,
    family_generate,
    iter_family_instances,
    vartheta_combination,
)
from .bases import (
    BASIS_NAMES,
    BasisCatalog,
    NormalizationScalars,
    RepresentationPair,
    StandardFormEntries,
    TransitionMatrix,
    build_basis_catalog,
    psi_check,
    represent,
    standard_basis_characterize,
    standard_form_entries,
    transition,
)
from .search import SearchConfig, SearchReport, replay, search

__version__ = "0.1.0"
