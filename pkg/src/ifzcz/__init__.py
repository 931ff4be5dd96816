"""Optimal interference-free ZCZ sequence sets via the finite Zak transform."""

from .constructions import (
    GeneralParams,
    NonPerfectSeedError,
    PiFParams,
    S1Params,
    S2Params,
    alphabet_size,
    build_general,
    build_pi_f,
    build_s1,
    build_s2,
    perfect_frank_modulatable,
    perfect_zadoff_chu,
    predict_zak_s1,
    predict_zak_s2,
    s2_as_s1,
)
from .correlation import (
    CorrelationProfile,
    ZczReport,
    auto_correlation,
    check_bound,
    cross_correlation,
    is_interference_free,
    is_perfect,
    zcz_length,
)
from .equivalence import (
    SearchBudgetExceeded,
    TransformSpec,
    apply_transform,
    are_equivalent,
    compose,
    inverse,
    preservation_report,
    verify_witness,
    witness_general_to_s1,
)
from .filterbank import (
    ComplexityModel,
    OpCounter,
    complexity_model,
    complexity_table,
    detect,
    direct_filterbank,
    fast_filterbank_s1,
    fast_filterbank_s2,
    measure_complexity,
    run_filterbank,
    zak_filterbank,
)
from .seqcore import (
    ComplexSequence,
    RootScalar,
    SequenceSet,
    TolerancePolicy,
    energy,
    make_polyphase,
    periodic_extend,
    pointwise_multiply,
    to_dense,
)
from .zak import ZakSpectrum, fzt, ifzt, sparsity, zak_at, zak_correlation, zak_to_fourier

__version__ = "0.1.0"
