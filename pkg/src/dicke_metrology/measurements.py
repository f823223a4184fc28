"""Classical Fisher information of local measurements on the ground state.

Two probes of single-mode reduced states are covered: homodyne detection of
a rotated quadrature x(phi), whose outcome statistics are Gaussian, and
photon counting, whose distribution follows from the displaced squeezed
thermal form of the reduced state.  Both yield classical Fisher information
in the coupling that can be compared against the QFI bound.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dicke import ATOMIC_MODE, DEFAULT_DELTA_MIN, RADIATION_MODE, DickeParams, ground_state
from .errors import NonConvergedSeries, StepCrossesCriticalPoint, UnphysicalStateError
from .estimation import default_step, state_derivative
from .gaussian import GaussianState, partial_trace

DIAGONAL_TOL = 1e-10
PN_TAIL_TOL = 1e-10
PN_HARD_LIMIT = 100_000
FI_TERM_FLOOR = 1e-14


class Target(str, enum.Enum):
    RADIATION = "radiation"
    ATOMS = "atoms"


@dataclass(frozen=True)
class HomodyneSetting:
    """Local-oscillator phase and which reduced mode is probed."""

    phi: float
    target: Target = Target.RADIATION

    @property
    def mode(self) -> int:
        return RADIATION_MODE if self.target is Target.RADIATION else ATOMIC_MODE


def _require_in_family(state: GaussianState) -> None:
    if state.n_modes != 1:
        raise ValueError(f"expected a single-mode state, got {state.n_modes} modes")
    scale = max(1.0, float(np.max(np.abs(state.cov))))
    if abs(state.cov[0, 1]) > DIAGONAL_TOL * scale:
        raise UnphysicalStateError("off-diagonal covariance: outside the x/p-aligned family")
    if abs(state.mean[1]) > DIAGONAL_TOL * max(1.0, abs(state.mean[0])):
        raise UnphysicalStateError("momentum displacement: outside the x-displaced family")


def quadrature_distribution(state: GaussianState, phi: float) -> tuple[float, float]:
    """Mean and variance of the rotated quadrature x(phi) = x cos(phi) + p sin(phi)."""
    _require_in_family(state)
    c2 = math.cos(phi) ** 2
    s2 = math.sin(phi) ** 2
    return (
        math.cos(phi) * float(state.mean[0]),
        c2 * float(state.cov[0, 0]) + s2 * float(state.cov[1, 1]),
    )


def fi_homodyne(
    params: DickeParams,
    setting: HomodyneSetting,
    step: float | None = None,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> float:
    """Fisher information of homodyne outcomes about the coupling.

    For the Gaussian marginal with mean m(lam) and variance v(lam),
    FI = (dm)^2 / v + (dv)^2 / (2 v^2).
    """
    sd = state_derivative(params, step=step, delta_min=delta_min)
    reduced = partial_trace(ground_state(params, delta_min=delta_min), [setting.mode])
    i = 2 * setting.mode
    c2 = math.cos(setting.phi) ** 2
    s2 = math.sin(setting.phi) ** 2
    var = c2 * reduced.cov[0, 0] + s2 * reduced.cov[1, 1]
    dvar = c2 * sd.dcov[i, i] + s2 * sd.dcov[i + 1, i + 1]
    dmean = math.cos(setting.phi) * sd.dmean[i]
    return float(dmean * dmean / var + dvar * dvar / (2.0 * var * var))


@dataclass(frozen=True)
class DstsParams:
    """Displaced squeezed thermal decomposition of a single-mode Gaussian state."""

    n_th: float
    r: float
    n_s: float
    gamma: float


def dsts_params(state: GaussianState) -> DstsParams:
    """Thermal occupation, squeezing, and displacement of an x/p-aligned state."""
    _require_in_family(state)
    sx, sp = float(state.cov[0, 0]), float(state.cov[1, 1])
    det = sx * sp
    if det < 0.25 * (1.0 - 1e-9):
        raise UnphysicalStateError(f"covariance determinant {det:.6e} below the vacuum bound 1/4")
    n_th = max(0.0, math.sqrt(det) - 0.5)
    r = 0.25 * math.log(sx / sp)
    n_s = math.sinh(r) ** 2
    return DstsParams(n_th=n_th, r=r, n_s=n_s, gamma=float(state.mean[0]) / math.sqrt(2.0))


@dataclass(frozen=True)
class MeanPhotonDecomposition:
    """Squeezing, thermal, and coherent contributions to the mean photon number."""

    n_s: float
    thermal: float
    coherent: float
    total: float


def mean_photon_decomposition(state: GaussianState) -> MeanPhotonDecomposition:
    """<N> = n_s + n_th (1 + 2 n_s) + gamma^2, reported term by term."""
    d = dsts_params(state)
    thermal = d.n_th * (1.0 + 2.0 * d.n_s)
    coherent = d.gamma * d.gamma
    return MeanPhotonDecomposition(
        n_s=d.n_s,
        thermal=thermal,
        coherent=coherent,
        total=d.n_s + thermal + coherent,
    )


@dataclass(frozen=True)
class PhotonNumberKernel:
    """Scalar inputs of the photon-number series for one state."""

    r00: float
    a_tilde: float
    b_tilde: float
    c_tilde: float


def photon_kernel_params(state: GaussianState) -> PhotonNumberKernel:
    """Series coefficients from the quadrature moments."""
    _require_in_family(state)
    sx, sp = float(state.cov[0, 0]), float(state.cov[1, 1])
    mx = float(state.mean[0])
    dx, dp = 1.0 + 2.0 * sx, 1.0 + 2.0 * sp
    return PhotonNumberKernel(
        r00=2.0 * math.exp(-mx * mx / dx) / math.sqrt(dx * dp),
        a_tilde=(4.0 * sx * sp - 1.0) / (dx * dp),
        b_tilde=2.0 * (sp - sx) / (dx * dp),
        c_tilde=math.sqrt(2.0) * mx / dx,
    )


@dataclass(frozen=True)
class PhotonDistribution:
    """Truncated photon-number distribution with its unresolved tail mass."""

    probs: np.ndarray
    n_max: int
    tail_mass: float


def _pn_values(kernel: PhotonNumberKernel, n_max: int) -> np.ndarray:
    # the displacement rides on the x-axis branch t = A - B of the
    # generating function; s = A + B carries the bare p-axis factor
    t = kernel.a_tilde - kernel.b_tilde
    s = kernel.a_tilde + kernel.b_tilde
    return _kernels.pn_series(kernel.r00, t, s, abs(kernel.c_tilde), n_max)


def photon_distribution(
    state: GaussianState,
    n_max: int | None = None,
    tail_tol: float = PN_TAIL_TOL,
    hard_limit: int = PN_HARD_LIMIT,
) -> PhotonDistribution:
    """Photon-number distribution of the state, truncated at a resolved tail.

    With explicit n_max the series is evaluated once at that cutoff; otherwise
    the cutoff starts at 10<N> + 50 and doubles until the unresolved tail mass
    drops below tail_tol, raising NonConvergedSeries at the hard limit.
    """
    kernel = photon_kernel_params(state)
    if n_max is not None:
        probs = _pn_values(kernel, int(n_max))
        _check_breakdown(probs)
        return PhotonDistribution(probs, int(n_max), tail_mass=max(0.0, 1.0 - math.fsum(probs)))
    mean_n = mean_photon_decomposition(state).total
    cutoff = int(10.0 * mean_n + 50.0)
    while True:
        if cutoff > hard_limit:
            raise NonConvergedSeries(
                f"photon series tail above {tail_tol:.1e} at the cutoff limit {hard_limit}"
            )
        probs = _pn_values(kernel, cutoff)
        _check_breakdown(probs)
        tail = 1.0 - math.fsum(probs)
        if tail < tail_tol:
            return PhotonDistribution(probs, cutoff, tail_mass=max(0.0, tail))
        cutoff = 2 * cutoff + 50


def _check_breakdown(probs: np.ndarray) -> None:
    low = float(np.min(probs))
    if low < -1e-9:
        raise UnphysicalStateError(f"photon series broke down: p(n) = {low:.3e}")


def _reduced_radiation(params: DickeParams, lam: float, delta_min: float) -> GaussianState:
    p = DickeParams(lam=lam, omega=params.omega, omega0=params.omega0, n_atoms=params.n_atoms)
    return partial_trace(ground_state(p, delta_min=delta_min), [RADIATION_MODE])


def fi_photon_counting_family(
    state_at,
    lam: float,
    step: float,
    tail_tol: float = PN_TAIL_TOL,
) -> tuple[float, int]:
    """Photon-counting Fisher information for any single-mode state family.

    FI = sum_n (dp(n))^2 / p(n) with dp from a symmetric difference over
    state_at(lam -+ step), all three distributions truncated at one shared
    cutoff; terms with p(n) below a fixed floor are skipped.
    """
    center = photon_distribution(state_at(lam), tail_tol=tail_tol)
    n_max = center.n_max
    while True:
        plus = photon_distribution(state_at(lam + step), n_max=n_max)
        minus = photon_distribution(state_at(lam - step), n_max=n_max)
        if max(plus.tail_mass, minus.tail_mass) < 10.0 * tail_tol:
            break
        n_max = 2 * n_max + 50
        if n_max > PN_HARD_LIMIT:
            raise NonConvergedSeries("side-point photon series tails failed to converge")
        center = photon_distribution(state_at(lam), n_max=n_max)
    dp = (plus.probs - minus.probs) / (2.0 * step)
    keep = center.probs >= FI_TERM_FLOOR
    fi = math.fsum((dp[keep] ** 2 / center.probs[keep]).tolist())
    return float(fi), n_max


def fi_photon_counting_detail(
    params: DickeParams,
    step: float | None = None,
    tail_tol: float = PN_TAIL_TOL,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> tuple[float, int]:
    """Fisher information of photon counting on the radiation mode, with the
    shared series cutoff used for the difference quotient."""
    lam, lc = params.lam, params.lambda_c
    h = default_step(lam, lc) if step is None else float(step)
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    if abs(lam - lc) <= h + delta_min:
        raise StepCrossesCriticalPoint(
            f"stencil half-width {h:.3e} reaches across lambda_c from lam = {lam}"
        )
    return fi_photon_counting_family(
        lambda x: _reduced_radiation(params, x, delta_min), lam, h, tail_tol=tail_tol
    )


def fi_photon_counting(
    params: DickeParams,
    step: float | None = None,
    tail_tol: float = PN_TAIL_TOL,
    delta_min: float = DEFAULT_DELTA_MIN,
) -> float:
    """Fisher information of photon counting on the radiation mode."""
    return fi_photon_counting_detail(params, step=step, tail_tol=tail_tol, delta_min=delta_min)[0]
