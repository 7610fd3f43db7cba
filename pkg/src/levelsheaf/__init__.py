"""Level-set barcodes of PL functions, sheaf barcodes on the line and block systems.

The two sides are related by ``xi_system`` (blocks to intervals) and
``psi_barcode`` (intervals to blocks); distances are computed exactly with
``fractions.Fraction``.
"""

from .barcodes import (
    CLRSplit,
    GradedBarcode,
    barcode_convolve,
    bottleneck_distance,
    candidate_epsilons,
    clr_split,
    eps_matching_exists,
)
from .blocks import Block, block_dim_at, block_from_trace, block_trace, dual_block, shift_block
from .errors import MalformedInput, OracleBudgetExceeded, PreconditionError
from .exact import INF, NEG_INF, ext, fmt
from .functors import psi_bar, psi_barcode, xi_block, xi_system
from .homology import SimplicialComplex, betti, homology, induced_map
from .intervals import Bar, Interval, IntervalClass, bar_dies, bars_eps_interleaved, classify, convolve_bar
from .levelset import (
    PLFunction,
    critical_values,
    levelset_mv,
    preimage_complex,
    pushforward_barcode,
    verify_pointwise_dims,
)
from .mvsystems import GradedBlock, MVSystem, mv_dim_at, mv_direct_sum, mv_interleaving_distance, mv_shift
from .oracle import mv_eps_interleaved_oracle
from .zigzag import ZigzagModule, zigzag_decompose, zigzag_iso_oracle

__version__ = "0.1.0"

__all__ = [
    "Bar",
    "Block",
    "CLRSplit",
    "GradedBarcode",
    "GradedBlock",
    "INF",
    "Interval",
    "IntervalClass",
    "MVSystem",
    "MalformedInput",
    "NEG_INF",
    "OracleBudgetExceeded",
    "PLFunction",
    "PreconditionError",
    "SimplicialComplex",
    "ZigzagModule",
    "bar_dies",
    "barcode_convolve",
    "bars_eps_interleaved",
    "betti",
    "block_dim_at",
    "block_from_trace",
    "block_trace",
    "bottleneck_distance",
    "candidate_epsilons",
    "classify",
    "clr_split",
    "convolve_bar",
    "critical_values",
    "dual_block",
    "eps_matching_exists",
    "ext",
    "fmt",
    "homology",
    "induced_map",
    "levelset_mv",
    "mv_dim_at",
    "mv_direct_sum",
    "mv_eps_interleaved_oracle",
    "mv_interleaving_distance",
    "mv_shift",
    "preimage_complex",
    "psi_bar",
    "psi_barcode",
    "pushforward_barcode",
    "shift_block",
    "verify_pointwise_dims",
    "xi_block",
    "xi_system",
    "zigzag_decompose",
    "zigzag_iso_oracle",
]
