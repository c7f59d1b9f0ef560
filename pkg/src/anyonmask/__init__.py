"""Exact simulator and verifier for Latin-square quantum information
masking in Kitaev-model anyon sector algebras."""

__version__ = "0.1.0"

from .anyons import (
    ABELIAN_ALPHABET,
    EPS,
    E,
    ISING_ALPHABET,
    M,
    SIGMA,
    VAC,
    AnyonModel,
    abelian_c0,
    fuse,
    ising_like,
    monodromy,
    phase_from_eighths,
    r_phase,
    validate_model,
)
from .braid import (
    BraidOp,
    apply_ops,
    circle,
    exchange,
    parse_ops,
    tripartite_braid,
    verify_invariance,
)
from .latin import (
    SchemeTriple,
    Square,
    are_orthogonal,
    cyclic_square,
    cyclic_triple,
    find_mols_pair,
    is_latin,
    standard_squares_d4,
    validate_triple,
)
from .masker import (
    MaskingScheme,
    abelian_standard_scheme,
    bipartite_control,
    encode,
    encode_basis,
    ising_cyclic_scheme,
    run_masking_campaign,
    verify_masking,
)
from .qstate import (
    BasisKet,
    DensityMatrix,
    StateVector,
    basis_state,
    hs_distance,
    inner,
    norm,
    partial_trace,
    scale,
    tensor,
)
from .teleport import (
    TeleportRun,
    alice_measure,
    build_channel,
    build_joint,
    correct,
    permutation_encode,
    run_teleport,
)

__all__ = [
    "ABELIAN_ALPHABET",
    "AnyonModel",
    "BasisKet",
    "BraidOp",
    "DensityMatrix",
    "E",
    "EPS",
    "ISING_ALPHABET",
    "M",
    "MaskingScheme",
    "SIGMA",
    "SchemeTriple",
    "Square",
    "StateVector",
    "TeleportRun",
    "VAC",
    "abelian_c0",
    "abelian_standard_scheme",
    "alice_measure",
    "apply_ops",
    "are_orthogonal",
    "basis_state",
    "bipartite_control",
    "build_channel",
    "build_joint",
    "circle",
    "correct",
    "cyclic_square",
    "cyclic_triple",
    "encode",
    "encode_basis",
    "exchange",
    "find_mols_pair",
    "fuse",
    "hs_distance",
    "inner",
    "is_latin",
    "ising_cyclic_scheme",
    "ising_like",
    "monodromy",
    "norm",
    "parse_ops",
    "partial_trace",
    "permutation_encode",
    "phase_from_eighths",
    "r_phase",
    "run_masking_campaign",
    "run_teleport",
    "scale",
    "standard_squares_d4",
    "tensor",
    "tripartite_braid",
    "validate_model",
    "validate_triple",
    "verify_invariance",
    "verify_masking",
    "__version__",
]
