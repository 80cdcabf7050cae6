"""Displacement-noise spectral densities of the interferometer.

All quantities are one-sided power spectral densities of differential mirror
displacement in m^2/Hz, as functions of sideband frequency f (Hz); amplitude
spectral densities are their square roots. The mechanical susceptibility of
the suspended mirrors enters through

    D(Omega) = -Omega^2 + Omega_0^2 + i * Omega * Omega_0 / Q,

the viscous-damping harmonic-oscillator denominator. The quantum noises are
evaluated in the flat small-sideband approximation (sideband frequencies well
below the signal-recycling cavity linewidth), which is also where the exact
uncertainty-product identity

    S_shot * S_backaction = S_hoSQL^2 / 4

holds at every frequency, independent of power, gain and squeezing.

Every operation is a pure function of (config, frequency); grids may be
evaluated concurrently without shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .params import CONSTANTS, InterferometerConfig, derive

#: Column order of a full budget; also the CSV column order.
CURVE_LABELS = (
    "fmSQL",
    "hoSQL",
    "shot",
    "backaction",
    "pendulum_thermal",
    "sensing",
    "classical_force",
    "total_quantum",
    "total_classical",
)


def susceptibility_denominator(omega, omega0: float, quality: float):
    """Harmonic-oscillator susceptibility denominator D(Omega), complex, s^-2.

    omega may be a scalar or array of angular frequencies. |D| > 0 for every
    Omega > 0 at finite Q.
    """
    omega = np.asarray(omega, dtype=float)
    return -(omega**2) + omega0**2 + 1j * omega * (omega0 / quality)


def _as_positive_frequencies(f) -> np.ndarray:
    arr = np.asarray(f, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("frequency must be positive (spectral densities diverge at DC)")
    return arr


def _scalar_like(f, values: np.ndarray):
    return float(values) if np.ndim(f) == 0 else values


def sql_free_mass(m: float, f):
    """Free-mass standard quantum limit, 2*hbar / (m * Omega^2), m^2/Hz."""
    if m <= 0:
        raise DomainError("mass must be positive")
    arr = _as_positive_frequencies(f)
    omega = 2 * np.pi * arr
    return _scalar_like(f, 2 * CONSTANTS.hbar / (m * omega**2))


def sql_harmonic(m: float, f, omega0: float, quality: float):
    """Harmonic-oscillator standard quantum limit, 2*hbar / (m * |D|), m^2/Hz.

    Reduces exactly to sql_free_mass for omega0 = 0.
    """
    if m <= 0:
        raise DomainError("mass must be positive")
    if omega0 < 0 or quality <= 0:
        raise DomainError("omega0 must be non-negative and quality positive")
    arr = _as_positive_frequencies(f)
    d = np.abs(susceptibility_denominator(2 * np.pi * arr, omega0, quality))
    return _scalar_like(f, 2 * CONSTANTS.hbar / (m * d))


def shot_noise(cfg: InterferometerConfig) -> float:
    """Quantum measurement (shot) noise floor, frequency independent, m^2/Hz.

    e^{-2r} * hbar * c^2 / (2 * omega * P * G) in the small-sideband model.
    """
    if cfg.circulating_power_P <= 0:
        raise DomainError("circulating_power_P must be positive (zero power has infinite shot noise)")
    d = derive(cfg)
    return (
        d.shot_noise_factor
        * CONSTANTS.hbar
        * CONSTANTS.c**2
        / (2 * d.optical_omega * cfg.circulating_power_P * cfg.signal_recycling_gain_G)
    )


def backaction_force_psd(cfg: InterferometerConfig) -> float:
    """One-sided PSD of the quantum radiation-pressure force, N^2/Hz (flat)."""
    d = derive(cfg)
    return (
        d.backaction_factor
        * 2
        * CONSTANTS.hbar
        * d.optical_omega
        * cfg.circulating_power_P
        * cfg.signal_recycling_gain_G
        / CONSTANTS.c**2
    )


def radiation_pressure_noise(cfg: InterferometerConfig, f):
    """Quantum back-action displacement noise, m^2/Hz.

    The flat radiation-pressure force PSD filtered by the mechanical
    susceptibility: S_F / (m^2 |D|^2).
    """
    arr = _as_positive_frequencies(f)
    d = derive(cfg)
    dabs2 = np.abs(
        susceptibility_denominator(2 * np.pi * arr, d.pendulum_omega0, cfg.quality_Q)
    ) ** 2
    return _scalar_like(f, backaction_force_psd(cfg) / (d.reduced_mass_m**2 * dabs2))


def thermal_force_psd(cfg: InterferometerConfig) -> float:
    """One-sided PSD of the suspension thermal force for viscous damping, N^2/Hz."""
    d = derive(cfg)
    return 4 * d.reduced_mass_m * d.pendulum_omega0 * CONSTANTS.k_B * cfg.temperature_T / cfg.quality_Q


def pendulum_thermal(cfg: InterferometerConfig, f):
    """Suspension (pendulum) thermal displacement noise, m^2/Hz.

    Viscous-damping force noise 4*m*Omega_0*k_B*T/Q filtered by 1/(m^2 |D|^2);
    zero at T = 0.
    """
    arr = _as_positive_frequencies(f)
    d = derive(cfg)
    dabs2 = np.abs(
        susceptibility_denominator(2 * np.pi * arr, d.pendulum_omega0, cfg.quality_Q)
    ) ** 2
    return _scalar_like(f, thermal_force_psd(cfg) / (d.reduced_mass_m**2 * dabs2))


def sensing_noise(cfg: InterferometerConfig) -> float:
    """Flat classical sensing (readout) displacement noise, m^2/Hz."""
    return cfg.sensing_noise_asd**2


def classical_force_noise(cfg: InterferometerConfig, f):
    """Optional flat classical force noise mapped to displacement, m^2/Hz."""
    arr = _as_positive_frequencies(f)
    if cfg.classical_force_noise_asd == 0.0:
        return _scalar_like(f, np.zeros_like(arr))
    d = derive(cfg)
    dabs2 = np.abs(
        susceptibility_denominator(2 * np.pi * arr, d.pendulum_omega0, cfg.quality_Q)
    ) ** 2
    return _scalar_like(
        f, cfg.classical_force_noise_asd**2 / (d.reduced_mass_m**2 * dabs2)
    )


def thermal_occupation(omega: float, temperature: float) -> float:
    """Bose-Einstein mean phonon number of a mode at angular frequency omega."""
    if omega <= 0:
        raise DomainError("omega must be positive")
    if temperature < 0:
        raise DomainError("temperature must be non-negative")
    if temperature == 0.0:
        return 0.0
    x = CONSTANTS.hbar * omega / (CONSTANTS.k_B * temperature)
    if x > 700:  # exp overflow; occupation is indistinguishable from zero
        return 0.0
    return 1.0 / math.expm1(x)


def zero_point_fluctuation(m: float, omega: float) -> float:
    """Ground-state position spread sqrt(hbar / (2 m omega)), metres."""
    if m <= 0 or omega <= 0:
        raise DomainError("mass and omega must be positive")
    return math.sqrt(CONSTANTS.hbar / (2 * m * omega))


@dataclass(frozen=True, eq=False)
class SpectralCurve:
    """A one-sided displacement PSD sampled on a strictly increasing grid.

    ``model`` is the continuous evaluator behind the samples; crossing
    refinement in the band module bisects it rather than the grid.
    """

    label: str
    frequencies: np.ndarray
    values: np.ndarray
    model: Callable[[np.ndarray], np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        freqs = np.asarray(self.frequencies, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "values", vals)
        if freqs.ndim != 1 or vals.shape != freqs.shape:
            raise ValueError("frequencies and values must be 1-d arrays of equal length")
        if len(freqs) > 1 and not np.all(np.diff(freqs) > 0):
            raise ValueError("frequencies must be strictly increasing")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise ValueError(f"curve '{self.label}' has negative or non-finite values")

    def asd(self) -> np.ndarray:
        return np.sqrt(self.values)


def log_frequency_grid(f_min: float, f_max: float, points_per_decade: int) -> np.ndarray:
    """Logarithmic grid from f_min to f_max inclusive.

    f_min == f_max yields the single-point grid.
    """
    if f_min <= 0 or f_max < f_min:
        raise DomainError("need 0 < f_min <= f_max")
    if points_per_decade < 1:
        raise DomainError("points_per_decade must be at least 1")
    if f_min == f_max:
        return np.array([f_min])
    n = int(math.floor(points_per_decade * math.log10(f_max / f_min) + 1e-9)) + 1
    grid = f_min * 10.0 ** (np.arange(n) / points_per_decade)
    if grid[-1] < f_max * (1 - 1e-12):
        grid = np.append(grid, f_max)
    else:
        grid[-1] = min(grid[-1], f_max)
    return grid


def budget(
    cfg: InterferometerConfig,
    f_min: float = 10.0,
    f_max: float = 1e4,
    points_per_decade: int = 60,
) -> list[SpectralCurve]:
    """Evaluate the full noise budget on a logarithmic grid.

    Returns one curve per label in CURVE_LABELS, each carrying its continuous
    model. total_quantum = shot + backaction; total_classical =
    pendulum_thermal + sensing + classical_force.
    """
    grid = log_frequency_grid(f_min, f_max, points_per_decade)
    d = derive(cfg)

    shot_level = shot_noise(cfg)
    sensing_level = sensing_noise(cfg)

    models: dict[str, Callable[[np.ndarray], np.ndarray]] = {
        "fmSQL": lambda f: sql_free_mass(d.reduced_mass_m, f),
        "hoSQL": lambda f: sql_harmonic(d.reduced_mass_m, f, d.pendulum_omega0, cfg.quality_Q),
        "shot": lambda f: np.broadcast_to(shot_level, np.shape(f)).copy()
        if np.ndim(f) else shot_level,
        "backaction": lambda f: radiation_pressure_noise(cfg, f),
        "pendulum_thermal": lambda f: pendulum_thermal(cfg, f),
        "sensing": lambda f: np.broadcast_to(sensing_level, np.shape(f)).copy()
        if np.ndim(f) else sensing_level,
        "classical_force": lambda f: classical_force_noise(cfg, f),
    }
    models["total_quantum"] = lambda f: models["shot"](f) + models["backaction"](f)
    models["total_classical"] = (
        lambda f: models["pendulum_thermal"](f) + models["sensing"](f) + models["classical_force"](f)
    )

    return [
        SpectralCurve(label, grid, np.atleast_1d(models[label](grid)), model=models[label])
        for label in CURVE_LABELS
    ]


def budget_to_csv(curves: Sequence[SpectralCurve]) -> str:
    """Render a budget as CSV: scientific notation, 9 significant digits.

    Output is bit-identical across runs for a fixed config and grid.
    """
    if not curves:
        raise ValueError("no curves to serialize")
    grid = curves[0].frequencies
    for curve in curves:
        if not np.array_equal(curve.frequencies, grid):
            raise ValueError("curves do not share a common grid")
    header = "frequency_hz," + ",".join(f"{c.label}_psd_m2_per_hz" for c in curves)
    lines = [header]
    for i, f in enumerate(grid):
        row = [f"{f:.8e}"] + [f"{c.values[i]:.8e}" for c in curves]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
