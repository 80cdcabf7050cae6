"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately re-derive results through different routes than the
package (closed-form crossing quadratics, regression-residual conditioning,
Riccati ODE integration) so that each dual-route check keeps two independent
sides.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.linalg
from scipy.integrate import solve_ivp

from epr_optomech.params import CONSTANTS, InterferometerConfig, derive, load_config

HBAR = CONSTANTS.hbar
C_LIGHT = CONSTANTS.c
K_B = CONSTANTS.k_B


@pytest.fixture
def default_cfg() -> InterferometerConfig:
    return load_config("{}")


# ---------------------------------------------------------------------------
# closed-form SQL-crossing oracle
# ---------------------------------------------------------------------------

def crossing_freq_from_dabs(dabs: float, omega0: float, quality: float) -> float:
    """Solve |D(Omega)| = dabs for the root above the resonance.

    |D|^2 = (u - w0^2)^2 + u (w0/Q)^2 with u = Omega^2 gives a quadratic in u;
    the larger root is the crossing above the pendulum resonance.
    """
    b = 2 * omega0**2 - (omega0 / quality) ** 2
    disc = b**2 - 4 * (omega0**4 - dabs**2)
    u = (b + math.sqrt(disc)) / 2
    return math.sqrt(u) / (2 * math.pi)


def oracle_crossings(cfg: InterferometerConfig) -> dict[str, float]:
    """Closed-form crossing frequencies of each noise curve with the hoSQL."""
    d = derive(cfg)
    m, w0, q = d.reduced_mass_m, d.pendulum_omega0, cfg.quality_Q
    omega = d.optical_omega
    pg = cfg.circulating_power_P * cfg.signal_recycling_gain_G

    k_force = 2 * w0 * K_B * cfg.temperature_T / (HBAR * q)
    k_sense = 2 * HBAR / (m * cfg.sensing_noise_asd**2)
    k_ba = d.backaction_factor * omega * pg / (C_LIGHT**2 * m)
    k_shot = 4 * omega * pg / (C_LIGHT**2 * m * d.shot_noise_factor)
    k_touch = 2 * omega * pg * math.sqrt(d.backaction_factor / d.shot_noise_factor) / (
        C_LIGHT**2 * m
    )
    return {
        "force": crossing_freq_from_dabs(k_force, w0, q),
        "sensing": crossing_freq_from_dabs(k_sense, w0, q),
        "backaction": crossing_freq_from_dabs(k_ba, w0, q),
        "shot": crossing_freq_from_dabs(k_shot, w0, q),
        "touch": crossing_freq_from_dabs(k_touch, w0, q),
    }


# ---------------------------------------------------------------------------
# random physical Gaussian states
# ---------------------------------------------------------------------------

def symplectic_form(n: int) -> np.ndarray:
    omega = np.zeros((2 * n, 2 * n))
    for k in range(n):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def random_physical_cov(rng: np.random.Generator, n_modes: int = 2,
                        max_thermal: float = 2.0, spread: float = 0.4) -> np.ndarray:
    """Random physical covariance: thermal core in a random symplectic frame."""
    nus = 0.5 * (1.0 + rng.uniform(0.0, max_thermal, size=n_modes))
    core = np.diag(np.repeat(nus, 2))
    h = rng.normal(0.0, spread, size=(2 * n_modes, 2 * n_modes))
    h = (h + h.T) / 2
    s = scipy.linalg.expm(symplectic_form(n_modes) @ h)
    return s @ core @ s.T


# ---------------------------------------------------------------------------
# brute-force Gaussian conditioning oracle
# ---------------------------------------------------------------------------

def conditional_oracle(mean: np.ndarray, cov: np.ndarray, mode: int,
                       angle: float, outcome: float) -> tuple[np.ndarray, np.ndarray]:
    """Conditional distribution of the unmeasured coordinates.

    Builds the joint distribution of (kept coordinates, measured quadrature)
    by an explicit linear projection, then applies the textbook conditional
    Gaussian block formula.
    """
    dim = cov.shape[0]
    keep = [k for k in range(dim) if k not in (2 * mode, 2 * mode + 1)]
    proj = np.zeros((len(keep) + 1, dim))
    for row, k in enumerate(keep):
        proj[row, k] = 1.0
    proj[-1, 2 * mode] = np.cos(angle)
    proj[-1, 2 * mode + 1] = np.sin(angle)

    joint_cov = proj @ cov @ proj.T
    joint_mean = proj @ mean
    sigma_kk = joint_cov[:-1, :-1]
    sigma_kq = joint_cov[:-1, -1]
    sigma_qq = joint_cov[-1, -1]
    cond_cov = sigma_kk - np.outer(sigma_kq, sigma_kq) / sigma_qq
    cond_mean = joint_mean[:-1] + sigma_kq * (outcome - joint_mean[-1]) / sigma_qq
    return cond_mean, cond_cov


# ---------------------------------------------------------------------------
# Riccati ODE oracle
# ---------------------------------------------------------------------------

def riccati_ode_oracle(model, p0: np.ndarray, t_final: float = 40.0) -> np.ndarray:
    """Integrate dP/dt = AP + PA' + W - P C'C P / V to its fixed point.

    The dimensionless system is rebuilt here from the model fields; time runs
    in units of 1/omega_ref, so a few tens of time units reach steady state.
    """
    m = model.mass
    u_x = math.sqrt(HBAR / (m * model.omega_ref))
    u_p = math.sqrt(HBAR * m * model.omega_ref)
    a = np.array([
        [0.0, (1.0 / m) * (u_p / u_x)],
        [-m * model.omega0**2 * (u_x / u_p), -model.omega0 / model.quality],
    ]) / model.omega_ref
    meas_intensity = (model.measurement_noise_psd / 2) / u_x**2 * model.omega_ref
    force_intensity = (model.force_noise_psd / 2) / u_p**2 / model.omega_ref
    w = np.diag([0.0, force_intensity])
    cmat = np.array([[1.0, 0.0]])

    def rhs(_t, y):
        p = y.reshape(2, 2)
        dp = a @ p + p @ a.T + w - p @ cmat.T @ cmat @ p / meas_intensity
        return dp.ravel()

    sol = solve_ivp(rhs, [0.0, t_final], np.asarray(p0, dtype=float).ravel(),
                    method="RK45", rtol=1e-12, atol=1e-14)
    p = sol.y[:, -1].reshape(2, 2)
    return (p + p.T) / 2
