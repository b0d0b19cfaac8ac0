"""cantelli: does this event sequence occur infinitely often?

Exact window-probability backends (independent, finite Markov, latent-uniform
threshold), convergence criteria over marginal and complement-window series,
a first-occurrence characterization of P(infinitely often), Monte Carlo
cross-validation, and a brute-force enumeration oracle.
"""

__version__ = "0.1.0"

from .criteria import (
    BOREL_CANTELLI,
    Conclusion,
    CriterionResult,
    SeriesKind,
    SeriesReport,
    SweepResult,
    Verdict,
    VerdictLabel,
    build_series_report,
    check_criterion,
    classify_series,
    series_terms,
    sweep_prefix_len,
)
from .families import Constant, ExplicitList, LogPower, PowerLaw, SequenceFamily
from .limsup import LimsupEstimate, TailUnionEstimate, limsup_estimate, tail_union
from .models import (
    AnalyticMetadata,
    DecayVerdict,
    EventSchedule,
    EventSequenceModel,
    GlobalThresholds,
    IndependentModel,
    LatentUniformModel,
    MarkovModel,
    NumericFaultError,
    PerLatentThresholds,
    marginal_decay_check,
)
from .montecarlo import (
    FrequencyEstimate,
    PathSample,
    estimate_tail_union,
    estimate_window_prob,
    sample_paths,
    wilson_interval,
)
from .oracle import (
    HorizonExceededError,
    TruncatedOutcomeSpace,
    build_outcome_space,
    oracle_union_prob,
    oracle_window_prob,
)
from .specfile import AnalysisDefaults, ModelSpec, SpecError, build_model, load_spec
from .windows import (
    Orientation,
    Terminal,
    WindowPattern,
    all_complement,
    first_occurrence,
    marginal,
)

__all__ = [
    "__version__",
    # windows
    "WindowPattern",
    "Orientation",
    "Terminal",
    "marginal",
    "first_occurrence",
    "all_complement",
    # families
    "SequenceFamily",
    "Constant",
    "PowerLaw",
    "LogPower",
    "ExplicitList",
    # models
    "EventSequenceModel",
    "IndependentModel",
    "MarkovModel",
    "EventSchedule",
    "LatentUniformModel",
    "GlobalThresholds",
    "PerLatentThresholds",
    "AnalyticMetadata",
    "DecayVerdict",
    "marginal_decay_check",
    "NumericFaultError",
    # criteria
    "SeriesKind",
    "BOREL_CANTELLI",
    "Verdict",
    "VerdictLabel",
    "Conclusion",
    "SeriesReport",
    "CriterionResult",
    "SweepResult",
    "series_terms",
    "classify_series",
    "build_series_report",
    "check_criterion",
    "sweep_prefix_len",
    # limsup
    "TailUnionEstimate",
    "LimsupEstimate",
    "tail_union",
    "limsup_estimate",
    # montecarlo
    "PathSample",
    "FrequencyEstimate",
    "wilson_interval",
    "sample_paths",
    "estimate_window_prob",
    "estimate_tail_union",
    # oracle
    "TruncatedOutcomeSpace",
    "build_outcome_space",
    "oracle_window_prob",
    "oracle_union_prob",
    "HorizonExceededError",
    # spec files
    "ModelSpec",
    "AnalysisDefaults",
    "SpecError",
    "load_spec",
    "build_model",
]
