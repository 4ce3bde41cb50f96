"""Exact simulation and analysis of period finding on marked arithmetic
progressions: statevector pipelines, closed-form spectra, continued-fraction
recovery, offset search, and work-factor accounting, all at desk scale."""

from .analysis import (
    EmpiricalTrials,
    GeometricStats,
    WorkfactorReport,
    expected_trials,
    general_unitary_ratio,
    geometric_stats,
    monte_carlo_trials,
    pipeline_success_probability,
    verified_recovery,
    workfactor_comparison,
)
from .closedform import (
    RatioBounds,
    amplified_pr,
    classify,
    closed_form_table,
    dirichlet_ratio,
    pr_ratio_bounds,
    qft_pr,
    qhs_pr,
    ratio_bounds,
)
from .errors import (
    CaseMismatch,
    DegenerateInstance,
    InvalidProbability,
    LabelOutOfRange,
    LpqError,
    MarkedSetTooLarge,
    NonTermination,
    NotUnitary,
    OverflowsLabelSpace,
    PeriodTooLarge,
    ValidationError,
    VerificationFailed,
    ZeroDenominator,
)
from .offset import (
    CountingContract,
    OffsetSearchResult,
    amplified_measure_member,
    exhaust_offsets,
    find_offset_counting,
    find_offset_decreasing,
    g_function,
    test_pair,
    test_period_known_s,
)
from .oracle import OracleHandle, OracleSpec, build_oracle, evaluate, members
from .recovery import (
    ContinuedFraction,
    Convergent,
    RecoveryResult,
    RecoveryStatus,
    accepted_denominator,
    continued_fraction,
    convergents,
    d_to_y,
    euler_phi,
    recover_period,
    smallest_residue,
    success_probability,
    success_set,
    totient_ratio,
    y_to_d,
)
from .simulator import (
    GroverSchedule,
    amplified_qft_state,
    dft,
    general_unitary_state,
    grover_iterate,
    grover_schedule,
    marked_mask,
    qft_state,
    qhs_distribution,
    qhs_state,
    sample,
    simulated_table,
    soft_n_limit,
    uniform_state,
)
from .spectrum import Algorithm, ProbabilityTable, SpectrumCase

__version__ = "0.1.0"
