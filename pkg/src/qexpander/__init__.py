"""Quantum expander channels built from Cayley graph walks on finite groups."""

__version__ = "0.1.0"

from .channel import (
    ExpanderChannel,
    SpectralReport,
    apply,
    build_channel,
    entropy,
    irrep_max_crosscheck,
    quantum_irrep_max,
    quantum_lambda2_dense,
    quantum_lambda2_iterative,
    superoperator,
    verify_gap_inequality,
)
from .fourier import (
    irrep_completeness_check,
    qft_matrix,
    tensor_multiplicities,
    verify_left_translation_blocks,
)
from .groups import (
    Cyclic,
    Dihedral,
    GeneratorSet,
    GroupElement,
    Product,
    Symmetric,
    closure,
    enumerate_group,
    inverse,
    multiply,
    parse_element,
    symmetrize,
)
from .irreps import IrrepHandle, character, irrep_matrix, list_irreps, parse_irrep
from .partitions import hook_length_dimension, irrep_dimension, partitions
from .standard import (
    PermutationOracle,
    defining_action,
    embedding_unitary_apply,
    standard_channel_lambda2,
    standard_rep_apply,
)
from .walk import build_walk, classical_lambda2, stationarity_residual
