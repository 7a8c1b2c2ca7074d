"""Classify mixed multipartite states of arbitrary local dimension by a
GHZ-based witness, with brute-force partial-transpose cross-checks."""

from .criteria import (
    ClassificationReport,
    DurCoefficients,
    WitnessReport,
    classify,
    dur_ppt_analytic,
    dur_state,
    extract_dur_coefficients,
    ghz_fidelity,
    is_k_ppt,
    npt_by_fidelity,
    search_selections,
    witness_bound,
    witness_operator,
    witness_value,
)
from .dmx import load_state, save_state
from .ghz import g_of, ghz_vector, j_of, l_of
from .hilbert import DensityOperator, TwoLevelSelection, ValidationError, partial_transpose
from .partitions import Partition, enumerate_partitions, necessary_subsets, tau_of, union_family
from .states import boundary_state, ghz_noisy, random_density, random_k_separable

__version__ = "0.1.0"
