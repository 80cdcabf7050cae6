"""SQL-crossing frequencies, feasibility ratio and entanglement timescales.

The harmonic-oscillator SQL is the reference level: the frequencies at which
classical force noise, sensing noise, back-action and shot noise cross it
bound the band in which conditional mirror entanglement is possible. The
feasibility criterion is a sensing/force crossing-frequency ratio above 2.

Timescales: tau_F = 1/(2*pi*f_force_cross) is the decoherence time of the
entangled motion, tau_q = 1/(2*pi*f_backaction_cross) the minimum time needed
to generate it, and the verification time must lie strictly between them.
Only the open interval (tau_q, tau_F) is reported; choosing the optimum
inside it is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import spectra
from .errors import AmbiguousBracketError, NoCrossingError
from .params import InterferometerConfig, derive
from .spectra import SpectralCurve

#: Feasibility threshold on f_sensing_cross / f_force_cross.
CRITICAL_RATIO = 2.0

_BISECTION_REL_TOL = 1e-10
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class BandReport:
    """Crossing frequencies (Hz), timescales (s) and the feasibility verdict.

    Fields are None when the corresponding crossing does not exist inside the
    analysis band; any missing crossing forces feasible=False.
    """

    f_force_cross: float | None
    f_sensing_cross: float | None
    f_backaction_cross: float | None
    f_shot_cross: float | None
    f_sql_touch: float | None
    ratio: float | None
    tau_F: float | None
    tau_q: float | None
    tau_V_bounds: tuple[float, float] | None
    feasible: bool

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "f_force_cross_hz": self.f_force_cross,
            "f_sensing_cross_hz": self.f_sensing_cross,
            "f_backaction_cross_hz": self.f_backaction_cross,
            "f_shot_cross_hz": self.f_shot_cross,
            "f_sql_touch_hz": self.f_sql_touch,
            "ratio": self.ratio,
            "tau_F_s": self.tau_F,
            "tau_q_s": self.tau_q,
            "tau_F_ms": None if self.tau_F is None else 1e3 * self.tau_F,
            "tau_q_ms": None if self.tau_q is None else 1e3 * self.tau_q,
            "tau_V_bounds_s": None if self.tau_V_bounds is None else list(self.tau_V_bounds),
            "feasible": self.feasible,
        }


def find_crossing(
    curve_a: SpectralCurve,
    curve_b: SpectralCurve,
    bracket: tuple[float, float] | None = None,
) -> float:
    """Frequency at which two sampled curves intersect, in Hz.

    The shared grid locates the single sign change of (A - B) inside the
    bracket; bisection of the continuous models then refines the root to a
    relative tolerance well below 1e-9. Grid points where the curves coincide
    exactly, or more than one sign change, raise AmbiguousBracketError; no
    sign change raises NoCrossingError.
    """
    if not np.array_equal(curve_a.frequencies, curve_b.frequencies):
        raise ValueError("curves must share the frequency grid")
    freqs = curve_a.frequencies
    if bracket is None:
        bracket = (freqs[0], freqs[-1])
    lo, hi = bracket
    mask = (freqs >= lo) & (freqs <= hi)
    if mask.sum() < 2:
        raise NoCrossingError(f"bracket ({lo}, {hi}) contains fewer than two grid points")

    diff = curve_a.values[mask] - curve_b.values[mask]
    sub_freqs = freqs[mask]
    signs = np.sign(diff)
    if np.any(signs == 0):
        raise AmbiguousBracketError("curves coincide exactly at a grid point")
    changes = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if len(changes) == 0:
        raise NoCrossingError(f"no crossing of {curve_a.label} and {curve_b.label} in ({lo}, {hi})")
    if len(changes) > 1:
        raise AmbiguousBracketError(
            f"{len(changes)} crossings of {curve_a.label} and {curve_b.label} in ({lo}, {hi})"
        )

    if curve_a.model is None or curve_b.model is None:
        raise ValueError("crossing refinement requires curves with continuous models")

    i = changes[0]
    f_lo, f_hi = float(sub_freqs[i]), float(sub_freqs[i + 1])
    g = lambda f: float(curve_a.model(f)) - float(curve_b.model(f))
    g_lo = g(f_lo)
    for _ in range(_MAX_BISECTIONS):
        f_mid = np.sqrt(f_lo * f_hi)  # geometric midpoint suits log-spaced curves
        if (f_hi - f_lo) <= _BISECTION_REL_TOL * f_mid:
            break
        g_mid = g(f_mid)
        if g_mid == 0.0:
            return f_mid
        if (g_lo > 0) == (g_mid > 0):
            f_lo, g_lo = f_mid, g_mid
        else:
            f_hi = f_mid
    return float(np.sqrt(f_lo * f_hi))


def _curve(label: str, grid: np.ndarray, model: Callable) -> SpectralCurve:
    return SpectralCurve(label, grid, np.atleast_1d(model(grid)), model=model)


def analyze(
    cfg: InterferometerConfig,
    f_min: float = 1.0,
    f_max: float = 1e5,
    points_per_decade: int = 24,
) -> BandReport:
    """Locate every SQL crossing and render the feasibility verdict.

    The analysis band defaults to 1 Hz - 100 kHz, which sits above the
    pendulum resonance for laboratory-scale suspensions and brackets all
    crossings of the reference design with wide margins.
    """
    grid = spectra.log_frequency_grid(f_min, f_max, points_per_decade)
    d = derive(cfg)

    hosql = _curve(
        "hoSQL",
        grid,
        lambda f: spectra.sql_harmonic(d.reduced_mass_m, f, d.pendulum_omega0, cfg.quality_Q),
    )
    force = _curve(
        "force_noise",
        grid,
        lambda f: spectra.pendulum_thermal(cfg, f) + spectra.classical_force_noise(cfg, f),
    )
    sensing_level = spectra.sensing_noise(cfg)
    sensing = _curve(
        "sensing",
        grid,
        lambda f: sensing_level * np.ones_like(np.asarray(f, dtype=float)),
    )
    backaction = _curve("backaction", grid, lambda f: spectra.radiation_pressure_noise(cfg, f))
    shot_level = spectra.shot_noise(cfg)
    shot = _curve("shot", grid, lambda f: shot_level * np.ones_like(np.asarray(f, dtype=float)))

    def crossing(a: SpectralCurve, b: SpectralCurve) -> float | None:
        try:
            return find_crossing(a, b)
        except (NoCrossingError, AmbiguousBracketError):
            return None

    f_force = crossing(force, hosql)
    f_sensing = crossing(sensing, hosql)
    f_backaction = crossing(backaction, hosql)
    f_shot = crossing(shot, hosql)
    # total_quantum touches the SQL exactly where shot and back-action balance
    # (their product is pinned to SQL^2/4 at every frequency).
    f_touch = crossing(shot, backaction)

    ratio = None
    if f_force is not None and f_sensing is not None:
        ratio = f_sensing / f_force
    tau_F = None if f_force is None else 1.0 / (2 * np.pi * f_force)
    tau_q = None if f_backaction is None else 1.0 / (2 * np.pi * f_backaction)
    tau_V = None if tau_F is None or tau_q is None else (tau_q, tau_F)
    feasible = ratio is not None and ratio > CRITICAL_RATIO and f_force < f_sensing

    return BandReport(
        f_force_cross=f_force,
        f_sensing_cross=f_sensing,
        f_backaction_cross=f_backaction,
        f_shot_cross=f_shot,
        f_sql_touch=f_touch,
        ratio=ratio,
        tau_F=tau_F,
        tau_q=tau_q,
        tau_V_bounds=tau_V,
        feasible=feasible,
    )
