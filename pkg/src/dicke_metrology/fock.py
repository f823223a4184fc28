"""Brute-force validators used by the test suite.

Truncated Fock-space construction of displaced squeezed thermal states,
Gaussian pure-state overlaps, and direct numerical Fisher-information
integrals.  Everything here trades speed for independence from the
phase-space code paths it checks; nothing in the library proper imports
this module.
"""
from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np
from scipy.linalg import expm

from .errors import UnphysicalStateError
from .gaussian import GaussianState, purity
from .measurements import DstsParams

TRACE_LOSS_TOL = 1e-9
PSD_TOL = 1e-10
FOCK_DIM_LIMIT = 4000


@dataclass(frozen=True)
class FockStateMatrix:
    """Density matrix on a truncated number basis."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = self.matrix
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"matrix shape {m.shape} does not match dim {self.dim}")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise UnphysicalStateError("density matrix is not Hermitian")
        tr = float(np.trace(m).real)
        if not (1.0 - 1e-6 <= tr <= 1.0 + 1e-12):
            raise UnphysicalStateError(f"trace {tr} outside [1 - 1e-6, 1]")
        if float(np.min(np.linalg.eigvalsh((m + m.conj().T) / 2.0))) < -PSD_TOL:
            raise UnphysicalStateError("density matrix has a negative eigenvalue")

    @property
    def photon_probs(self) -> np.ndarray:
        return np.diag(self.matrix).real.copy()

    @property
    def mean_photons(self) -> float:
        return float(np.arange(self.dim) @ self.photon_probs)


def _annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, dim)), k=1)


def _build_once(params: DstsParams, dim: int) -> tuple[np.ndarray, float]:
    a = _annihilation(dim)
    ad = a.T
    if params.n_th > 0.0:
        n = np.arange(dim)
        diag = np.exp(n * math.log(params.n_th) - (n + 1) * math.log1p(params.n_th))
    else:
        diag = np.zeros(dim)
        diag[0] = 1.0
    rho = np.diag(diag).astype(complex)
    if params.r != 0.0:
        s = expm((params.r / 2.0) * (ad @ ad - a @ a))
        rho = s @ rho @ s.conj().T
    if params.gamma != 0.0:
        d = expm(params.gamma * (ad - a))
        rho = d @ rho @ d.conj().T
    rho = (rho + rho.conj().T) / 2.0
    return rho, float(np.trace(rho).real)


def build_dsts_fock(params: DstsParams, dim: int | None = None) -> FockStateMatrix:
    """Displaced squeezed thermal density matrix on a truncated basis.

    With dim=None the truncation starts at 10<N> + 40 and grows until the
    trace loss drops below 1e-9.  An explicit dim that cannot hold the state
    raises instead.
    """
    mean_n = params.n_s + params.n_th * (1.0 + 2.0 * params.n_s) + params.gamma**2
    if dim is not None:
        rho, tr = _build_once(params, dim)
        if 1.0 - tr > TRACE_LOSS_TOL:
            raise ValueError(f"trace loss {1.0 - tr:.3e} at dim {dim}: truncation insufficient")
        return FockStateMatrix(dim, rho)
    dim = int(10.0 * mean_n + 40.0)
    while True:
        rho, tr = _build_once(params, dim)
        if 1.0 - tr <= TRACE_LOSS_TOL:
            return FockStateMatrix(dim, rho)
        if dim >= FOCK_DIM_LIMIT:
            raise ValueError(f"trace loss {1.0 - tr:.3e} persists at dim {dim}")
        dim = min(FOCK_DIM_LIMIT, 2 * dim)


def pure_overlap(s1: GaussianState, s2: GaussianState, purity_tol: float = 1e-6) -> float:
    """|<psi1|psi2>|^2 for pure Gaussian states."""
    for s in (s1, s2):
        mu = purity(s.cov)
        if abs(mu - 1.0) > purity_tol:
            raise UnphysicalStateError(f"purity {mu} too far from 1 for the overlap formula")
    total = s1.cov + s2.cov
    delta = s1.mean - s2.mean
    sign, logdet = np.linalg.slogdet(total)
    if sign <= 0:
        raise UnphysicalStateError("covariance sum is not positive definite")
    return float(math.exp(-0.5 * (delta @ np.linalg.solve(total, delta)) - 0.5 * logdet))


def fidelity_qfi(state_at, lam: float, delta: float) -> float:
    """Finite-separation QFI 8(1 - sqrt(overlap))/delta^2 of a pure family."""
    ov = pure_overlap(state_at(lam - delta / 2.0), state_at(lam + delta / 2.0))
    return 8.0 * (1.0 - math.sqrt(ov)) / delta**2


def fi_integral_oracle(
    pdf,
    lam: float,
    step: float,
    grid: np.ndarray,
    discrete: bool = False,
    norm_tol: float = 1e-6,
    floor: float = 1e-300,
) -> float:
    """(d_lam ln p)^2 p integrated over outcomes by brute force.

    pdf(lam, outcomes) evaluates the outcome density on the grid; continuous
    densities are integrated with the trapezoid rule, discrete ones summed.
    """
    p0 = np.asarray(pdf(lam, grid), dtype=float)
    total = float(np.sum(p0)) if discrete else float(np.trapezoid(p0, grid))
    if abs(total - 1.0) > norm_tol:
        raise ValueError(f"outcome density sums to {total}, not normalized on this grid")
    dp = (np.asarray(pdf(lam + step, grid)) - np.asarray(pdf(lam - step, grid))) / (2.0 * step)
    mask = p0 > floor
    integrand = np.zeros_like(p0)
    integrand[mask] = dp[mask] ** 2 / p0[mask]
    return float(np.sum(integrand)) if discrete else float(np.trapezoid(integrand, grid))


def fi_gauss_hermite(pdf, lam: float, step: float, center: float, scale: float, order: int = 180) -> float:
    """Continuous-outcome FI by Gauss-Hermite quadrature.

    center/scale shift the nodes onto the density's bulk: x = center + scale y
    with scale ~ sqrt(2 var) makes the e^{y^2}-compensated integrand polynomial
    up to the density's own Gaussian envelope.
    """
    y, w = np.polynomial.hermite.hermgauss(order)
    x = center + scale * y
    p0 = np.asarray(pdf(lam, x), dtype=float)
    dp = (np.asarray(pdf(lam + step, x)) - np.asarray(pdf(lam - step, x))) / (2.0 * step)
    mask = p0 > 1e-300
    h = np.zeros_like(p0)
    h[mask] = dp[mask] ** 2 / p0[mask] * np.exp(y[mask] ** 2) * scale
    return float(w @ h)
