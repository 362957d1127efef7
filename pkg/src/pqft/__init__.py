"""Classical-field analogy to the quantum Fourier transform.

Fields are tagged with pseudorandom phase sequences; the formal product of
``n`` fields, demodulated against the sum of all tags, behaves like an
``n``-qubit state. This package runs the per-coefficient transform on such
fields and checks every output against a dense DFT.
"""

from pqft.errors import (
    CollisionError,
    ConstructionError,
    InvalidInputError,
    PQFTError,
    PreconditionError,
)
from pqft.pps import (
    SequenceFamily,
    check_balance,
    check_orthogonality,
    collision_check,
    combine,
    collision_free_family,
    make_fourier_family,
    make_mseq_family,
)
from pqft.field import (
    FieldState,
    OmegaPower,
    SequencePolynomial,
    apply_gate,
    controlled_phase,
    evaluate_sampled,
    hadamard,
    mode_select,
    phase_exponent,
    prepare_ghz_fields,
    prepare_uniform,
    prepare_w_fields,
)
from pqft.ensemble import (
    ExpandedState,
    ReducedState,
    inner_product,
    reduce,
    reduce_sampled,
    tensor_product,
)
from pqft.qft import (
    GateCounts,
    TransformReport,
    extract_coefficient,
    gate_count,
    reduced_transform,
    transform,
)
from pqft.oracle import check_published_matrix, compare, dft_matrix, qft_oracle

__version__ = "0.1.0"

__all__ = [
    "CollisionError",
    "ConstructionError",
    "ExpandedState",
    "FieldState",
    "GateCounts",
    "InvalidInputError",
    "OmegaPower",
    "PQFTError",
    "PreconditionError",
    "ReducedState",
    "SequenceFamily",
    "SequencePolynomial",
    "TransformReport",
    "apply_gate",
    "check_balance",
    "check_published_matrix",
    "check_orthogonality",
    "collision_check",
    "collision_free_family",
    "combine",
    "compare",
    "controlled_phase",
    "dft_matrix",
    "evaluate_sampled",
    "extract_coefficient",
    "gate_count",
    "hadamard",
    "inner_product",
    "make_fourier_family",
    "make_mseq_family",
    "mode_select",
    "phase_exponent",
    "prepare_ghz_fields",
    "prepare_uniform",
    "prepare_w_fields",
    "qft_oracle",
    "reduce",
    "reduce_sampled",
    "reduced_transform",
    "tensor_product",
    "transform",
]
