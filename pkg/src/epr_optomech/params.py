"""Physical constants, user configuration and derived setup quantities.

Every symbol used by the spectral-density formulas lives here: CODATA
constants, the interferometer configuration (masses, suspension, optical
power, recycling gain, squeezing, readout noise) and the quantities derived
from them (reduced mass, pendulum frequency, optical angular frequency,
squeeze factors).

All types are immutable and safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Any, Mapping

import jsonschema

from .errors import ConfigParseError, ConfigValidationError


@dataclass(frozen=True)
class PhysicalConstants:
    """Fixed CODATA values (SI units); not configurable."""

    hbar: float = 1.054571817e-34   # reduced Planck constant, J*s
    c: float = 2.99792458e8         # speed of light, m/s
    k_B: float = 1.380649e-23       # Boltzmann constant, J/K
    g: float = 9.81                 # local gravity, m/s^2


CONSTANTS = PhysicalConstants()

SQUEEZE_PHASE_MODES = ("shot-noise-reduced", "back-action-reduced", "none")

#: JSON schema of the configuration document. Structural checks only (types,
#: key membership); physical invariants are enforced by InterferometerConfig.
CONFIG_SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "mirror_mass_m0": {"type": "number"},
        "pendulum_length_L": {"type": "number"},
        "quality_Q": {"type": "number"},
        "temperature_T": {"type": "number"},
        "circulating_power_P": {"type": "number"},
        "signal_recycling_gain_G": {"type": "number"},
        "squeeze_parameter_r": {"type": "number"},
        "squeeze_phase_mode": {"enum": list(SQUEEZE_PHASE_MODES)},
        "wavelength_lambda": {"type": "number"},
        "sensing_noise_asd": {"type": "number"},
        "classical_force_noise_asd": {"type": "number"},
        "common_channel_gain_ratio": {"type": "number"},
        "differential_channel_gain_ratio": {"type": "number"},
    },
}


@dataclass(frozen=True)
class InterferometerConfig:
    """All physical parameters of the dual-Michelson setup (SI units).

    Defaults reproduce the reference design: two 0.1 kg mirrors suspended
    from 0.3 m fibres at 4 K, 4 kW total circulating power, signal-recycling
    power gain 2000, flat classical sensing noise of 5e-21 m/sqrt(Hz).

    The wavelength default of 1550 nm is a calibration choice: together with
    the power and recycling gain it places the back-action/SQL crossing near
    230 Hz and the SQL touch near 330 Hz. ``circulating_power_P`` is the
    total light power sensing the mirrors (all arms combined).

    ``squeeze_phase_mode`` selects how injected squeezing acts:
    "shot-noise-reduced" scales shot noise by e^{-2r} and back-action by
    e^{+2r}, "back-action-reduced" does the opposite, "none" ignores r.
    """

    mirror_mass_m0: float = 0.1
    pendulum_length_L: float = 0.3
    quality_Q: float = 2e7
    temperature_T: float = 4.0
    circulating_power_P: float = 4000.0
    signal_recycling_gain_G: float = 2000.0
    squeeze_parameter_r: float = 0.0
    squeeze_phase_mode: str = "shot-noise-reduced"
    wavelength_lambda: float = 1.55e-6
    sensing_noise_asd: float = 5e-21
    classical_force_noise_asd: float = 0.0
    # Relative measurement strength of the bright-port (common) channel and
    # effective recycling-gain ratio of the dark-port (differential) channel.
    common_channel_gain_ratio: float = 1.0
    differential_channel_gain_ratio: float = 1.0

    def __post_init__(self) -> None:
        checks = [
            (self.mirror_mass_m0 > 0, "mirror_mass_m0 must be positive"),
            (self.pendulum_length_L > 0, "pendulum_length_L must be positive"),
            (self.quality_Q > 1, "quality_Q must exceed 1"),
            (self.temperature_T >= 0, "temperature_T must be non-negative"),
            (self.circulating_power_P >= 0, "circulating_power_P must be non-negative"),
            (self.signal_recycling_gain_G >= 1, "signal_recycling_gain_G must be at least 1"),
            (self.squeeze_parameter_r >= 0, "squeeze_parameter_r must be non-negative"),
            (self.squeeze_phase_mode in SQUEEZE_PHASE_MODES,
             f"squeeze_phase_mode must be one of {SQUEEZE_PHASE_MODES}"),
            (self.wavelength_lambda > 0, "wavelength_lambda must be positive"),
            (self.sensing_noise_asd >= 0, "sensing_noise_asd must be non-negative"),
            (self.classical_force_noise_asd >= 0,
             "classical_force_noise_asd must be non-negative"),
            (self.common_channel_gain_ratio > 0,
             "common_channel_gain_ratio must be positive"),
            (self.differential_channel_gain_ratio > 0,
             "differential_channel_gain_ratio must be positive"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigValidationError(message)

    def to_json_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class DerivedParams:
    """Quantities derived from an InterferometerConfig."""

    reduced_mass_m: float        # kg, m0/2: one Michelson per mirror face
    pendulum_omega0: float       # rad/s, sqrt(g/L)
    optical_omega: float         # rad/s, 2*pi*c/lambda
    shot_noise_factor: float     # multiplies the shot-noise PSD
    backaction_factor: float     # multiplies the back-action PSD


def load_config(document: str | bytes | Mapping[str, Any]) -> InterferometerConfig:
    """Parse and validate a JSON configuration document.

    Absent keys take their defaults; unknown keys and wrong types raise
    ConfigParseError naming the offending field, invariant violations raise
    ConfigValidationError.
    """
    if isinstance(document, (str, bytes)):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ConfigParseError(f"config is not valid JSON: {exc}") from exc
    else:
        data = dict(document)

    try:
        jsonschema.validate(data, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        name = exc.path[0] if exc.path else "document"
        raise ConfigParseError(f"config field '{name}': {exc.message}") from exc

    return InterferometerConfig(**data)


def config_to_json(cfg: InterferometerConfig) -> str:
    """Serialize a config so that load_config round-trips it exactly."""
    return json.dumps(cfg.to_json_dict(), indent=2) + "\n"


def derive(cfg: InterferometerConfig, constants: PhysicalConstants = CONSTANTS) -> DerivedParams:
    """Compute the derived setup quantities. Pure and deterministic."""
    r = cfg.squeeze_parameter_r
    if cfg.squeeze_phase_mode == "shot-noise-reduced":
        shot_factor, ba_factor = math.exp(-2 * r), math.exp(2 * r)
    elif cfg.squeeze_phase_mode == "back-action-reduced":
        shot_factor, ba_factor = math.exp(2 * r), math.exp(-2 * r)
    else:
        shot_factor = ba_factor = 1.0
    return DerivedParams(
        reduced_mass_m=cfg.mirror_mass_m0 / 2,
        pendulum_omega0=math.sqrt(constants.g / cfg.pendulum_length_L),
        optical_omega=2 * math.pi * constants.c / cfg.wavelength_lambda,
        shot_noise_factor=shot_factor,
        backaction_factor=ba_factor,
    )
