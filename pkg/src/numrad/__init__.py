"""Numerical radius, operator-matrix compression bounds and their randomized certification."""

from .blocks import BlockMatrix
from .bounds import (
    BoundReport,
    aok_compression,
    bound_2x2,
    bound_chain,
    commutator_bound,
    fg_hat_compression,
    hou_du_compression,
    kittaneh_commutator_bound,
    legacy_spectral_sum_bound,
    offdiag_bound,
    positive_equality,
    product_bound,
    product_sum_bound,
    selfadjoint_sandwich,
    spectral_sum_bound,
    symmetrize_half,
    unitary_commutator_bound,
    unitary_commutator_bound_min,
)
from .errors import *  # noqa: F401,F403
from .fg import FgPair, power_pair
from .harness import EnsembleConfig, FuzzReport, fuzz_invariants, sample, search_incomparability, tightness_stats
from .linalg import abs_op, eig_backend, herm_eig, op_norm, psd_apply, spectral_radius
from .radius import RadiusResult, check_mixed_schwarz, numerical_radius, numerical_radius_nonneg

__version__ = "0.1.0"
