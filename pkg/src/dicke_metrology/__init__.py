"""Gaussian ground-state metrology across the superradiant phase transition.

Phase-space tools for two-mode Gaussian states, the thermodynamic-limit
ground state of the Dicke model, quantum Fisher information of the coupling,
and the classical Fisher information of homodyne and photon-counting probes.
"""
from .dicke import (
    DickeDerived,
    DickeParams,
    Phase,
    closed_form_cov,
    derive,
    ground_state,
    reduced_atomic_state,
    reduced_radiation_state,
    symplectic_chain,
)
from .errors import (
    CriticalPointSingularity,
    DickeMetrologyError,
    NonConvergedSeries,
    SingularCovarianceError,
    StepCrossesCriticalPoint,
    UnphysicalStateError,
)
from .estimation import (
    EstimationResult,
    SldCoefficients,
    cramer_rao_bound,
    fit_power_law,
    qfi,
    sld_coefficients,
    sld_coefficients_f1_frame,
    state_derivative,
)
from .gaussian import (
    GaussianState,
    SymplecticSpectrum,
    SymplecticTransform,
    apply_symplectic,
    log_negativity,
    partial_trace,
    purity,
    symplectic_form,
    symplectic_spectrum,
    vacuum_state,
    wigner_at,
)
from .measurements import (
    DstsParams,
    HomodyneSetting,
    MeanPhotonDecomposition,
    PhotonDistribution,
    PhotonNumberKernel,
    Target,
    dsts_params,
    fi_homodyne,
    fi_photon_counting,
    mean_photon_decomposition,
    photon_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "CriticalPointSingularity",
    "DickeDerived",
    "DickeMetrologyError",
    "DickeParams",
    "DstsParams",
    "EstimationResult",
    "GaussianState",
    "HomodyneSetting",
    "MeanPhotonDecomposition",
    "NonConvergedSeries",
    "Phase",
    "PhotonDistribution",
    "PhotonNumberKernel",
    "SingularCovarianceError",
    "SldCoefficients",
    "StepCrossesCriticalPoint",
    "SymplecticSpectrum",
    "SymplecticTransform",
    "Target",
    "UnphysicalStateError",
    "apply_symplectic",
    "closed_form_cov",
    "cramer_rao_bound",
    "derive",
    "dsts_params",
    "fi_homodyne",
    "fi_photon_counting",
    "fit_power_law",
    "ground_state",
    "log_negativity",
    "mean_photon_decomposition",
    "partial_trace",
    "photon_distribution",
    "purity",
    "qfi",
    "reduced_atomic_state",
    "reduced_radiation_state",
    "sld_coefficients",
    "sld_coefficients_f1_frame",
    "state_derivative",
    "symplectic_chain",
    "symplectic_form",
    "symplectic_spectrum",
    "vacuum_state",
    "wigner_at",
]
