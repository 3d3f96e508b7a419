"""Exact-arithmetic quiver representations and n-representations.

Objects live over QQ or GF(p) and every computation is exact: morphism
spaces, direct sums, kernels, cokernels, the canonical factorization
through the image, and indecomposability certificates, for single-quiver
representations and for n-representations (towers of representations
glued by connector maps).  A randomized harness checks the abelian
category laws, and a text file format plus CLI round-trips everything.
"""

from .errors import (
    CandidateNotAnnihilating,
    ComponentQuiverMismatch,
    CyclicQuiver,
    DanglingEndpoint,
    DependentColumns,
    DuplicateId,
    EndpointMismatch,
    FieldMismatch,
    IndexOutOfRange,
    NoSolution,
    NonCommutingSquare,
    NotInjective,
    ParseError,
    QuiverMismatch,
    QuiverRepError,
    RationalsNotSupportedForExhaustive,
    ShapeMismatch,
    TooLarge,
    UnresolvedName,
    ZeroNRep,
    ZeroRep,
)
from .fileformat import Document, emit, parse
from .laws import (
    LAWS,
    LawFailure,
    TrialConfig,
    Verdict,
    brute_hom_count,
    random_nrep,
    run_all,
    run_law,
    verify_universal,
)
from .linalg import QQ, FieldSpec, Matrix
from .nrep import (
    NRep,
    NRepMorphism,
    embed_component,
    ncanonical_decomposition,
    ncokernel,
    ndirect_sum,
    nhom_basis,
    nindec_status,
    nkernel,
    nmorphism_check,
    nrep_check,
    truncate,
)
from .quiver import Arrow, Quiver, ValidationReport, arrow_pairs, topo_order, validate
from .rep import (
    CanonicalDecomposition,
    IndecResult,
    IndecStatus,
    Rep,
    RepMorphism,
    canonical_decomposition,
    cokernel,
    direct_sum,
    hom_basis,
    indec_status,
    kernel,
    morphism_check,
)

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "LAWS",
    "Arrow",
    "CandidateNotAnnihilating",
    "CanonicalDecomposition",
    "ComponentQuiverMismatch",
    "CyclicQuiver",
    "DanglingEndpoint",
    "DependentColumns",
    "Document",
    "DuplicateId",
    "EndpointMismatch",
    "FieldMismatch",
    "FieldSpec",
    "IndecResult",
    "IndecStatus",
    "IndexOutOfRange",
    "LawFailure",
    "Matrix",
    "NRep",
    "NRepMorphism",
    "NoSolution",
    "NonCommutingSquare",
    "NotInjective",
    "ParseError",
    "Quiver",
    "QuiverMismatch",
    "QuiverRepError",
    "RationalsNotSupportedForExhaustive",
    "Rep",
    "RepMorphism",
    "ShapeMismatch",
    "TooLarge",
    "TrialConfig",
    "UnresolvedName",
    "ValidationReport",
    "Verdict",
    "ZeroNRep",
    "ZeroRep",
    "arrow_pairs",
    "brute_hom_count",
    "canonical_decomposition",
    "cokernel",
    "direct_sum",
    "embed_component",
    "emit",
    "hom_basis",
    "indec_status",
    "kernel",
    "morphism_check",
    "ncanonical_decomposition",
    "ncokernel",
    "ndirect_sum",
    "nhom_basis",
    "nindec_status",
    "nkernel",
    "nmorphism_check",
    "nrep_check",
    "parse",
    "random_nrep",
    "run_all",
    "run_law",
    "topo_order",
    "truncate",
    "validate",
    "verify_universal",
]
