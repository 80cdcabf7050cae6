"""Noise budget, feasibility band and Gaussian entanglement engine for a
dual-Michelson interferometer designed to entangle the motion of two
suspended 0.1 kg mirrors."""

from .band import BandReport, analyze, find_crossing
from .conditional import (
    ConditionalStateReport,
    MirrorModeModel,
    build_model,
    steady_conditional_cov,
    two_mirror_state,
)
from .errors import (
    AmbiguousBracketError,
    ConfigError,
    ConfigParseError,
    ConfigValidationError,
    DomainError,
    EprOptomechError,
    NoCrossingError,
    SolverError,
)
from .gaussian import (
    EprReport,
    GaussianState,
    beam_splitter,
    entanglement_swap,
    epr_pair,
    epr_report,
    homodyne_condition,
    squeeze,
    symplectic_eigenvalues,
    vacuum,
)
from .params import (
    CONSTANTS,
    DerivedParams,
    InterferometerConfig,
    PhysicalConstants,
    config_to_json,
    derive,
    load_config,
)
from .spectra import (
    CURVE_LABELS,
    SpectralCurve,
    budget,
    budget_to_csv,
    log_frequency_grid,
    pendulum_thermal,
    radiation_pressure_noise,
    sensing_noise,
    shot_noise,
    sql_free_mass,
    sql_harmonic,
    susceptibility_denominator,
    thermal_occupation,
    zero_point_fluctuation,
)

__version__ = "0.1.0"
