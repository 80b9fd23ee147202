"""Outcome classification, threshold bisection and the comparison checks."""

from .outcome import (
    Extinction,
    NearCritical,
    Outcome,
    OutcomeCriteria,
    Propagation,
    TurnCount,
    Undetermined,
    classify_outcome,
    count_turns,
    decision_stop,
    longest_run,
    midpoint_trend,
)
from .bisection import ThresholdResult, ThresholdSearch, TraceEntry, check_monotone_trace, find_threshold
from .comparison import (
    ContinuityReport,
    RatioWitness,
    amplitude_pair_instance,
    check_domination,
    continuity_bound,
    continuity_bound_check,
    domination_margin,
    lockstep_params,
    ratio,
    ratio_witness,
)

__all__ = [
    'Extinction',
    'NearCritical',
    'Outcome',
    'OutcomeCriteria',
    'Propagation',
    'TurnCount',
    'Undetermined',
    'classify_outcome',
    'count_turns',
    'decision_stop',
    'longest_run',
    'midpoint_trend',
    'ThresholdResult',
    'ThresholdSearch',
    'TraceEntry',
    'check_monotone_trace',
    'find_threshold',
    'ContinuityReport',
    'RatioWitness',
    'amplitude_pair_instance',
    'check_domination',
    'continuity_bound',
    'continuity_bound_check',
    'domination_margin',
    'lockstep_params',
    'ratio',
    'ratio_witness',
]
