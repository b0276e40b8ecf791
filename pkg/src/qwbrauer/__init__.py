"""Exact Gram determinants, orthogonal-form coefficients and blocks for the
quantized walled Brauer algebra B_{r,t}(rho, q)."""

from .blocks import (
    BlockPartition,
    Verdict,
    blocks,
    gram_nonzero,
    is_simple_head,
    lemma_block_n_set,
    n_balanced,
    n_paired,
    vanishing_crosscheck,
)
from .coefficients import (
    action_matrix,
    central_scalar,
    e_diag,
    e_diag_via_residue,
    quantum_dim,
    rect_hom_coeff,
    s_diag,
    s_offdiag,
    s_pair_coeffs,
    schur_principal,
    w_series,
)
from .errors import DomainError, InvariantViolation
from .gram import GramReport, gamma, gram_det, gram_det_recursive, norm, norm_of_max
from .partitions import Bipartition, LambdaPoint, Partition, bip, enumerate_lambda, point
from .scalars import (
    BracketProduct,
    ExactScalar,
    SpecializationParams,
    expand,
    format_factored,
    is_in_base_ring,
    parse_factored,
    parse_params,
    specialize,
)
from .tableaux import UpDownTableau, enumerate_updown, make_tableau, tableau_max

__version__ = "0.1.0"
