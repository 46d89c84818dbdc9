"""Lex-maximal spectra, ranks and explicit constructions for bipartite states
with uniform margins, backed by exhaustive Kronecker-coefficient oracles."""

from .errors import (
    BudgetExceeded,
    ConvergenceFailure,
    DomainError,
    MaxlexError,
    NotAPartition,
    SizeMismatch,
)
from .kronecker import (
    character_table,
    character_value,
    kronecker_coefficient,
    phi_set,
    rational_spectra_slice,
    transposed_kronecker,
)
from .lr import LrQuery, lr_coefficient, lr_positive
from .partitions import (
    Ordering,
    Partition,
    RationalSpectrum,
    cmp_dominance,
    cmp_lex,
    enumerate_partitions,
    intersect,
    normalize,
    scale,
    skew_as_partition,
    transpose,
)
from .states import (
    DensityOperator,
    WeightMatrix,
    construct,
    construct_divisible,
    construct_full,
    extremality_check,
    numerical_rank,
    partial_trace_a,
    partial_trace_b,
    psi_basis,
    psi_state,
    rank_bounds,
    schur_check,
    spectrum,
    weight_for_rank,
    weyl_x,
    weyl_z,
)
from .strip_type import (
    corollary_weight_condition,
    counterexample_n_nplus1,
    counterexample_two_by_m,
    max_lex_spectrum,
    rect_strip_type,
)

__version__ = "0.1.0"
