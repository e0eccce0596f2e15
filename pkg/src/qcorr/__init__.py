"""qcorr: exact stationary covariances and quantum correlations of two
detuned harmonic oscillators in a common Ohmic (Lorentz-Drude) bath.

The covariance matrix of the unique Gaussian stationary state is computed by
two independent routes, adaptive quadrature of the power spectra and a
residue/digamma closed form, which cross-validate each other to near machine
precision; logarithmic negativity, Gaussian discord, purities and EPR
variances are then evaluated on top.
"""

from .errors import (
    CothPole,
    DegeneratePoles,
    DigammaPole,
    DomainWarning,
    KernelPole,
    NearRealAxisRoot,
    NegativeRate,
    NonPositiveFrequency,
    NumericalError,
    ParameterError,
    QcorrError,
    QuadratureNonConvergence,
    ResonantParams,
    RootFindingFailure,
    SingularAtFrequency,
    UnphysicalState,
    UnstablePotential,
)
from .model import (
    CharacteristicPolynomial,
    ModelParams,
    RootSet,
    build_h_polynomial,
    dissipative_kernel,
    find_roots,
    inverse_susceptibility,
    spectral_density,
    susceptibility,
    validate_params,
)
from .specfun import PartialFraction, coth, digamma, partial_fractions
from .spectral import (
    CovarianceMatrix,
    PowerSpectrumEval,
    covariance_analytic,
    covariance_analytic_split,
    covariance_quadrature,
    position_spectrum,
)
from .gaussian import (
    CorrelationReport,
    PurityEprReport,
    SymplecticInvariants,
    correlation_report,
    discord_measurement_scan,
    gaussian_discord_mode1,
    gaussian_discord_mode2,
    log_negativity,
    pt_symplectic_minimum,
    purities_and_epr,
    random_physical_covariance,
    symplectic_eigenvalues,
    symplectic_eigenvalues_direct,
    symplectic_invariants,
)
from .approx import (
    EffectiveModelParams,
    effective_model_covariance,
    effective_model_params,
    perturbative_roots,
    weak_dissipation_covariances,
)
from .cli import BandResult, SweepGrid, SweepRecord, find_band, run_sweep, run_validation

__version__ = "0.1.0"
