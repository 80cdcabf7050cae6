"""Steady-state conditional covariance of mirror motion under continuous
position measurement, and the two-mirror entanglement it implies.

Model: a single mechanical mode (x, p) with viscous damping,

    dx/dt = p/m,    dp/dt = -m*Omega0^2*x - (Omega0/Q)*p + F,

driven by white force noise (suspension thermal plus quantum back-action)
and read out through a position record with white measurement noise (shot).
Continuously filtering that record leaves the Markovian steady-state
conditional covariance, the fixed point of the estimation Riccati equation

    A P + P A^T + W - P C^T V^{-1} C P = 0.

White-noise intensities entering the filter are the symmetrized (two-sided)
densities, i.e. half the one-sided PSDs used by the spectra module. With
quantum-limited noise (shot * back-action force = hbar^2 one-sided) the
fixed point is a pure squeezed state; classical force noise degrades the
purity.

Covariances are reported in dimensionless quadratures with vacuum variance
1/2: x in units sqrt(hbar/(m*Omega_ref)), p in units sqrt(hbar*m*Omega_ref),
where Omega_ref is the angular frequency at which the channel's quantum
noise touches the SQL, so reports are comparable across configurations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
import scipy.linalg

from . import spectra
from .errors import DomainError, SolverError
from .gaussian import EprReport, GaussianState, epr_report
from .params import CONSTANTS, InterferometerConfig, derive

MIRROR_MODES = ("common", "differential")

#: Residual bound on the algebraic Riccati equation, in normalized units.
RICCATI_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class MirrorModeModel:
    """White-noise state-space model of one joint mirror mode."""

    mode: str                        # "common" or "differential"
    mass: float                      # kg (reduced)
    omega0: float                    # rad/s
    quality: float
    force_noise_psd: float           # N^2/Hz, one-sided, flat
    measurement_noise_psd: float     # m^2/Hz, one-sided, flat
    readout_quadrature_angle: float  # rad, recorded only; no angle optimization
    omega_ref: float                 # rad/s, normalization frequency

    def __post_init__(self) -> None:
        if self.mass <= 0 or self.omega0 < 0 or self.quality <= 0:
            raise DomainError("mass must be positive, omega0 >= 0, quality > 0")
        if self.force_noise_psd < 0 or self.measurement_noise_psd < 0:
            raise DomainError("noise PSDs must be non-negative")
        if self.omega_ref <= 0:
            raise DomainError("omega_ref must be positive")


@dataclass(frozen=True, eq=False)
class ConditionalStateReport:
    """Steady-state conditional covariance in dimensionless quadratures."""

    mode: str
    cov: np.ndarray          # 2x2, vacuum variance 1/2
    purity: float            # 1/(2 sqrt(det cov))
    squeeze_angle: float     # rad, orientation of the minimum-variance axis
    squeeze_factor: float    # minimum variance over the vacuum variance
    omega_ref: float         # rad/s

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "cov": np.asarray(self.cov).tolist(),
            "purity": self.purity,
            "squeeze_angle": self.squeeze_angle,
            "squeeze_factor": self.squeeze_factor,
            "omega_ref_rad_per_s": self.omega_ref,
        }


def build_model(
    cfg: InterferometerConfig,
    mode: str = "differential",
    readout_angle: float = 0.0,
) -> MirrorModeModel:
    """Assemble the white-noise model of one mirror mode from a config.

    The channel's effective power-recycling product P*G is scaled by the
    configured per-channel gain ratio (a reduced differential gain stands in
    for the momentum-optimized readout). The readout angle is recorded as
    metadata only.
    """
    if mode not in MIRROR_MODES:
        raise DomainError(f"mode must be one of {MIRROR_MODES}")
    ratio = (
        cfg.common_channel_gain_ratio if mode == "common" else cfg.differential_channel_gain_ratio
    )
    d = derive(cfg)
    measurement = spectra.shot_noise(cfg) / ratio
    force_ba = spectra.backaction_force_psd(cfg) * ratio
    force = spectra.thermal_force_psd(cfg) + force_ba
    # SQL-touch frequency of this channel: |D(omega_ref)|^2 = S_F / (m^2 S_x)
    dabs = np.sqrt(force_ba / (d.reduced_mass_m**2 * measurement))
    b = 2 * d.pendulum_omega0**2 - (d.pendulum_omega0 / cfg.quality_Q) ** 2
    u = (b + np.sqrt(b**2 - 4 * (d.pendulum_omega0**4 - dabs**2))) / 2
    omega_ref = float(np.sqrt(u))
    return MirrorModeModel(
        mode=mode,
        mass=d.reduced_mass_m,
        omega0=d.pendulum_omega0,
        quality=cfg.quality_Q,
        force_noise_psd=force,
        measurement_noise_psd=measurement,
        readout_quadrature_angle=readout_angle,
        omega_ref=omega_ref,
    )


def riccati_residual(model: MirrorModeModel, cov: np.ndarray) -> float:
    """Max-abs residual of the normalized algebraic Riccati equation at cov."""
    a, c, w, v = _normalized_system(model)
    p = np.asarray(cov, dtype=float)
    res = a @ p + p @ a.T + w - p @ c.T @ c @ p / v
    return float(np.abs(res).max())


def _normalized_system(model: MirrorModeModel):
    """Fully dimensionless state space: quadratures in vacuum-1/2 units,
    time in units of 1/omega_ref."""
    m = model.mass
    u_x = np.sqrt(CONSTANTS.hbar / (m * model.omega_ref))
    u_p = np.sqrt(CONSTANTS.hbar * m * model.omega_ref)
    a_si = np.array([[0.0, 1.0 / m], [-m * model.omega0**2, -model.omega0 / model.quality]])
    scale = np.diag([1.0 / u_x, 1.0 / u_p])
    unscale = np.diag([u_x, u_p])
    a = scale @ a_si @ unscale / model.omega_ref
    c = np.array([[1.0, 0.0]])
    # symmetrized intensities (one-sided PSD / 2) in the dimensionless time
    v = (model.measurement_noise_psd / 2) / u_x**2 * model.omega_ref
    w = np.diag([0.0, (model.force_noise_psd / 2) / u_p**2 / model.omega_ref])
    return a, c, w, v


def steady_conditional_cov(model: MirrorModeModel) -> ConditionalStateReport:
    """Solve the estimation Riccati equation for the conditional covariance.

    Returns the normalized 2x2 covariance with purity, squeeze orientation
    and squeeze factor. Raises SolverError if the algebraic solve fails or
    the fixed-point residual exceeds RICCATI_RESIDUAL_TOL.
    """
    if not np.isfinite(model.measurement_noise_psd) or model.measurement_noise_psd <= 0:
        raise DomainError("measurement_noise_psd must be positive and finite")
    a, c, w, v = _normalized_system(model)
    try:
        # filter Riccati via the dual control problem
        cov = scipy.linalg.solve_continuous_are(a.T, c.T, w, np.array([[v]]))
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolverError(f"Riccati solve failed: {exc}") from exc
    cov = (cov + cov.T) / 2

    # Newton (Kleinman) polish: each step solves a Lyapunov equation for the
    # correction and roughly squares the residual.
    residual = riccati_residual(model, cov)
    for _ in range(10):
        if residual < 1e-12:
            break
        closed_loop = a - cov @ c.T @ c / v
        defect = a @ cov + cov @ a.T + w - cov @ c.T @ c @ cov / v
        try:
            delta = scipy.linalg.solve_continuous_lyapunov(closed_loop, -defect)
        except (np.linalg.LinAlgError, ValueError):
            break
        cov = (cov + delta + (cov + delta).T) / 2
        new_residual = riccati_residual(model, cov)
        if not np.isfinite(new_residual) or new_residual >= residual:
            cov = (cov - delta + (cov - delta).T) / 2  # revert a non-improving step
            break
        residual = new_residual

    if not np.isfinite(residual) or residual > RICCATI_RESIDUAL_TOL:
        raise SolverError("Riccati fixed point did not converge", residual=residual)

    det = float(np.linalg.det(cov))
    eigvals = np.linalg.eigvalsh(cov)
    # orientation of the minimum-variance axis, wrapped to (-pi/2, pi/2]
    angle_major = 0.5 * np.arctan2(2 * cov[0, 1], cov[0, 0] - cov[1, 1])
    angle = angle_major + np.pi / 2
    if angle > np.pi / 2:
        angle -= np.pi
    return ConditionalStateReport(
        mode=model.mode,
        cov=cov,
        purity=float(1.0 / (2.0 * np.sqrt(det))),
        squeeze_angle=float(angle),
        squeeze_factor=float(eigvals[0] / 0.5),
        omega_ref=model.omega_ref,
    )


def two_mirror_state(
    report_common: ConditionalStateReport,
    report_diff: ConditionalStateReport,
) -> tuple[GaussianState, EprReport]:
    """Rotate the common/differential conditional states onto the mirrors.

    Embeds the two covariances as independent modes and applies the exact
    symplectic rotation x_A = (x_c + x_d)/sqrt2, x_B = (x_c - x_d)/sqrt2
    (same for p). Differently shaped or oriented common and differential
    ellipses yield two-mirror entanglement; identical ones yield none.
    """
    cov_in = np.zeros((4, 4))
    cov_in[:2, :2] = np.asarray(report_common.cov, dtype=float)
    cov_in[2:, 2:] = np.asarray(report_diff.cov, dtype=float)
    h = 1.0 / np.sqrt(2.0)
    s = np.zeros((4, 4))
    s[0, 0] = s[0, 2] = h      # x_A
    s[1, 1] = s[1, 3] = h      # p_A
    s[2, 0] = h                # x_B
    s[2, 2] = -h
    s[3, 1] = h                # p_B
    s[3, 3] = -h
    state = GaussianState(2, np.zeros(4), s @ cov_in @ s.T)
    return state, epr_report(state, 0, 1)
