"""Short non-binary LDPC codes on the q-ary erasure channel.

The package follows one pipeline: build a binary base matrix, measure
how far erasure decoding can possibly reach on it (the ultimate
distance), label its ones with field coefficients until the labeled
code's minimum distance hits that ceiling, then decode, enumerate, and
bound the uncorrectable erasure patterns of the result.
"""

from .bounds import (
    BoundReport,
    bound_report,
    ensemble_stopping_spectrum,
    gallager_weight_enumerator,
    liva_bound,
    new_bound_b_nu,
    psi1,
    spectral_bound,
    strip_enumerator,
)
from .channel import (
    DEFAULT_PATTERN_BUDGET,
    DecodeOutcome,
    DecodeStatus,
    EnumerationResult,
    ErasurePattern,
    MonteCarloResult,
    bp_peel,
    exact_b_nu,
    hybrid_decode,
    mds_baseline_decode,
    mds_encode,
    mds_monte_carlo,
    ml_residual,
    monte_carlo,
    p_block,
    p_block_conditional,
    random_codeword,
    wilson_interval,
)
from .constructions import (
    QCSpec,
    RATE34_QC_SPECS,
    complete_bipartite_base,
    complete_graph_base,
    gallager_sample,
    qc_from_generators,
    tanner_girth,
)
from .distance import (
    INFINITE_DISTANCE,
    DistanceReport,
    binary_min_distance,
    brute_force_min_distance,
    min_distance_q,
    ultimate_distance,
)
from .errors import (
    AlphabetTooSmall,
    BadShape,
    BudgetExceeded,
    IncompleteRange,
    LabelingFailure,
    NbldpcError,
    ParameterDomain,
)
from .galois import DEFAULT_MODULI, Field
from .labeling import (
    LabelSearchConfig,
    expected_failure_probability,
    greedy_labeling,
    random_labeling,
)
from .manifest import ARTIFACT_VERSION, ExperimentManifest, modulus_table_hash
from .matrices import (
    BaseMatrix,
    Labeling,
    OpCounter,
    ParityCheckMatrix,
    SolveResult,
    SolveStatus,
    rank_gfq,
    read_bmat,
    read_lab,
    row_reduce,
    solve_erasures,
    write_bmat,
    write_lab,
)
from .structure import (
    QCSymmetry,
    StoppingSetCollection,
    enumerate_stopping_sets,
    hall_witness,
    is_proper_square,
    is_stopping_set,
    is_weakly_proper,
    read_ss,
    scan_stopping_sets,
    write_ss,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
