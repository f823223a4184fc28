"""Quantum Fisher information of the ground-state family in the coupling.

The coupling enters through both moments, so the QFI of a pure Gaussian
family splits into a quadratic (covariance) part and a displacement part:

    H = -Tr[Omega^T dcov Omega dcov] + dmean^T cov^-1 dmean

with the symmetric logarithmic derivative L = R^T Phi R + R^T zeta - nu,
Phi = -dcov, zeta = Omega^T cov^-1 dmean, nu = Tr[Omega^T cov Omega Phi].

Moment derivatives are taken by symmetric finite differences with one
Richardson extrapolation step; stencils refuse to straddle the critical
coupling, where the family is singular.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dicke import DEFAULT_DELTA_MIN, DickeParams, derive, f1_matrix, ground_state
from .errors import StepCrossesCriticalPoint
from .gaussian import symplectic_form


def default_step(lam: float, lambda_c: float) -> float:
    """Default finite-difference half-step at coupling lam."""
    h = max(1e-6, 1e-5 * abs(lam - lambda_c))
    if lam > 0:
        h = min(h, lam / 2.0)
    return h


def richardson_derivative(f: Callable[[float], np.ndarray], x: float, step: float) -> np.ndarray:
    """Symmetric difference at steps h and h/2, Richardson-combined to O(h^4)."""
    coarse = (f(x + step) - f(x - step)) / (2.0 * step)
    fine = (f(x + step / 2.0) - f(x - step / 2.0)) / step
    return (4.0 * fine - coarse) / 3.0


@dataclass(frozen=True)
class StateDerivative:
    """Coupling derivatives of the ground-state moments and the step used."""

    dcov: np.ndarray
    dmean: np.ndarray
    step: float


def _guard_step(lam: float, lambda_c: float, step: float, delta_min: float) -> None:
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if abs(lam - lambda_c) <= step + delta_min:
        raise StepCrossesCriticalPoint(
            f"stencil half-width {step:.3e} reaches across lambda_c from lam = {lam}"
        )


def state_derivative(
    params: DickeParams,
    step: float | None = None,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> StateDerivative:
    """d(cov)/d(lam) and d(mean)/d(lam) of the ground state at params."""
    lc = params.lambda_c
    h = default_step(params.lam, lc) if step is None else float(step)
    _guard_step(params.lam, lc, h, delta_min)

    def moments(lam: float) -> np.ndarray:
        st = ground_state(
            DickeParams(lam=lam, omega=params.omega, omega0=params.omega0, n_atoms=params.n_atoms),
            delta_min=delta_min,
        )
        return np.concatenate([st.cov.reshape(-1), st.mean])

    d = richardson_derivative(moments, params.lam, h)
    dcov = d[:16].reshape(4, 4)
    return StateDerivative(dcov=(dcov + dcov.T) / 2.0, dmean=d[16:], step=h)


@dataclass(frozen=True)
class EstimationResult:
    """QFI split into covariance-driven and displacement-driven parts."""

    qfi: float
    quadratic_term: float
    displacement_term: float


def qfi(
    params: DickeParams,
    step: float | None = None,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> EstimationResult:
    """Quantum Fisher information of the coupling at params."""
    sd = state_derivative(params, step=step, delta_min=delta_min)
    st = ground_state(params, delta_min=delta_min)
    omega = symplectic_form(2)
    quadratic = -float(np.trace(omega.T @ sd.dcov @ omega @ sd.dcov))
    displacement = float(sd.dmean @ np.linalg.solve(st.cov, sd.dmean))
    return EstimationResult(
        qfi=quadratic + displacement,
        quadratic_term=quadratic,
        displacement_term=displacement,
    )


def cramer_rao_bound(result: EstimationResult, n_measurements: int) -> float:
    """Lower bound 1/(m H) on the estimator variance after m independent runs."""
    if n_measurements < 1:
        raise ValueError("n_measurements must be a positive integer")
    return 1.0 / (n_measurements * result.qfi)


@dataclass(frozen=True)
class SldCoefficients:
    """Quadratic form, linear term, and scalar offset of the SLD."""

    phi: np.ndarray
    zeta: np.ndarray
    nu: float


def sld_coefficients(
    params: DickeParams,
    step: float | None = None,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> SldCoefficients:
    """SLD coefficients (Phi, zeta, nu) in the laboratory quadratures."""
    sd = state_derivative(params, step=step, delta_min=delta_min)
    st = ground_state(params, delta_min=delta_min)
    omega = symplectic_form(2)
    phi = -sd.dcov
    zeta = omega.T @ np.linalg.solve(st.cov, sd.dmean)
    nu = float(np.trace(omega.T @ st.cov @ omega @ phi))
    return SldCoefficients(phi=phi, zeta=zeta, nu=nu)


def sld_coefficients_f1_frame(
    params: DickeParams,
    step: float | None = None,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> SldCoefficients:
    """SLD coefficients in the dimensionless quadratures R' = F1 R.

    In this frame the quadratic form collapses near the critical point onto
    the single divergent direction (x1' - x2')^2, and in the superradiant
    phase the linear term approaches a coupling-independent vector along
    (omega0^2 p1', -omega^2 p2').
    """
    raw = sld_coefficients(params, step=step, delta_min=delta_min)
    f1_inv_t = np.diag(1.0 / np.diag(f1_matrix(derive(params, delta_min=delta_min))))
    return SldCoefficients(
        phi=f1_inv_t @ raw.phi @ f1_inv_t,
        zeta=f1_inv_t @ raw.zeta,
        nu=raw.nu,
    )


def fit_power_law(samples: list[tuple[float, float]], center: float) -> tuple[float, float]:
    """Fit value = prefactor * |x - center|^exponent by least squares in logs.

    Requires at least four samples, all on one side of the center, spanning
    at least one decade of |x - center|.  Returns (exponent, prefactor).
    """
    if len(samples) < 4:
        raise ValueError(f"need at least 4 samples, got {len(samples)}")
    x = np.array([s[0] for s in samples], dtype=float)
    y = np.array([s[1] for s in samples], dtype=float)
    offsets = x - center
    if not (np.all(offsets > 0) or np.all(offsets < 0)):
        raise ValueError("samples must all lie on one side of the center")
    dist = np.abs(offsets)
    if np.max(dist) / np.min(dist) < 10.0 * (1.0 - 1e-9):
        raise ValueError("samples must span at least one decade in |x - center|")
    if np.any(y <= 0):
        raise ValueError("power-law fit requires positive values")
    slope, intercept = np.polyfit(np.log(dist), np.log(y), 1)
    return float(slope), float(np.exp(intercept))
