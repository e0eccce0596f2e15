"""Two detuned harmonic oscillators in a common Ohmic bath.

The system Hamiltonian is

    H_S = sum_i [ p_i^2/2 + omega_i^2 x_i^2/2 ] + (k/2)(x_1 - x_2)^2

and both coordinates couple to one bosonic bath through x_1 + x_2, with an
Ohmic spectral density with Lorentz-Drude cutoff

    J(omega) = 2*gamma*omega / (pi * (1 + omega^2/omega_c^2)).

The counterterm that compensates the bath-induced frequency shift is
Omega^2 = 2*gamma*omega_c; it doubles as an effective bath-mediated
bilinear coupling between the two modes.

Everything here lives in the frequency domain (convention
f(omega) = int dt e^{i omega t} f(t)): the generalized susceptibility
alpha(omega) is the 2x2 inverse of

    (alpha^-1)_ii = omega_i^2 + Omega^2 - omega^2 + k - chi(omega)
    (alpha^-1)_ij = -k + Omega^2 - chi(omega)            (i != j)

with the dissipative kernel chi(omega) = 2*gamma*omega_c^2/(omega_c - i*omega).
Multiplying det alpha^-1 by the single kernel denominator (omega_c - i*omega)
cancels the chi^2 cross terms identically and leaves a degree-5 polynomial
h(omega) whose five complex roots control the stationary state.  For stable
parameters all five roots lie strictly in the lower half plane (retarded
response, poles of a causal susceptibility).

Units: hbar = k_B = 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    KernelPole,
    NearRealAxisRoot,
    NegativeRate,
    NonPositiveFrequency,
    ResonantParams,
    RootFindingFailure,
    SingularAtFrequency,
)

# Tolerances (desk scale).  Residual and axis tests are applied to the
# rescaled polynomial, where root magnitudes are O(1); see find_roots.
RESONANCE_TOL_REL = 1e-6
ROOT_RESIDUAL_TOL = 1e-9
REAL_AXIS_TOL_REL = 1e-8
KERNEL_POLE_TOL_REL = 1e-12
MATRIX_INVERSE_TOL = 1e-9
_NEWTON_SWEEPS = 4


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the two-oscillator + common-bath model.

    Attributes
    ----------
    omega1, omega2 : float
        Bare oscillator frequencies (> 0, non-degenerate).
    k : float
        Mechanical spring coupling (>= 0, units of frequency^2).
    gamma : float
        Dissipation rate (>= 0).
    omega_c : float
        Lorentz-Drude cutoff frequency (> 0).
    temperature : float
        Bath temperature (>= 0).
    """

    omega1: float
    omega2: float
    k: float
    gamma: float
    omega_c: float
    temperature: float

    @property
    def renorm_sq(self) -> float:
        """Counterterm Omega^2 = 2*gamma*omega_c (never stored, always derived)."""
        return 2.0 * self.gamma * self.omega_c

    def replace(self, **kwargs) -> "ModelParams":
        from dataclasses import replace as _replace

        return _replace(self, **kwargs)


def validate_params(p: ModelParams) -> ModelParams:
    """Check all parameter invariants and hand the instance back.

    Raises
    ------
    NonPositiveFrequency
        If omega1, omega2 or omega_c is not strictly positive.
    NegativeRate
        If gamma, k or temperature is negative.
    ResonantParams
        If |omega1 - omega2| is below the resonance tolerance: at exact
        resonance the relative coordinate decouples from the bath and the
        stationary state depends on the initial condition, which is outside
        this package's contract.
    """
    for name in ("omega1", "omega2", "omega_c"):
        v = getattr(p, name)
        if not np.isfinite(v) or v <= 0.0:
            raise NonPositiveFrequency(f"{name} must be > 0, got {v!r}")
    for name in ("gamma", "k", "temperature"):
        v = getattr(p, name)
        if not np.isfinite(v) or v < 0.0:
            raise NegativeRate(f"{name} must be >= 0, got {v!r}")
    tol = RESONANCE_TOL_REL * min(p.omega1, p.omega2)
    if abs(p.omega1 - p.omega2) <= tol:
        raise ResonantParams(
            f"|omega1 - omega2| = {abs(p.omega1 - p.omega2):.3g} <= {tol:.3g}; "
            "degenerate oscillators have no unique stationary state"
        )
    return p


def spectral_density(p: ModelParams, omega):
    """Ohmic spectral density with Lorentz-Drude cutoff, odd in omega."""
    omega = np.asarray(omega, dtype=float)
    out = 2.0 * p.gamma * omega / (np.pi * (1.0 + (omega / p.omega_c) ** 2))
    return out if out.ndim else float(out)


def dissipative_kernel(p: ModelParams, omega):
    """Frequency-domain dissipative kernel chi(omega) = 2*gamma*omega_c^2 / (omega_c - i*omega).

    chi(0) equals the counterterm Omega^2, and chi(-conj(omega)) = conj(chi(omega))
    (the time-domain kernel is real).

    Raises
    ------
    KernelPole
        If omega is within tolerance of the kernel pole at -i*omega_c.
    """
    omega = np.asarray(omega, dtype=complex)
    denom = p.omega_c - 1j * omega
    if np.min(np.abs(denom)) < KERNEL_POLE_TOL_REL * p.omega_c:
        raise KernelPole(f"omega within tolerance of the kernel pole -i*omega_c = {-1j * p.omega_c}")
    out = 2.0 * p.gamma * p.omega_c**2 / denom
    return out if out.ndim else complex(out)


def inverse_susceptibility(p: ModelParams, omega) -> np.ndarray:
    """2x2 matrix alpha^-1(omega); symmetric in the mode indices.

    At omega = 0 the kernel cancels the counterterm exactly and the matrix
    reduces to the bare potential [[w1^2+k, -k], [-k, w2^2+k]] for any gamma.
    """
    w2 = complex(omega) ** 2
    chi = dissipative_kernel(p, omega)
    W2 = p.renorm_sq
    diag1 = p.omega1**2 + W2 - w2 + p.k - chi
    diag2 = p.omega2**2 + W2 - w2 + p.k - chi
    off = -p.k + W2 - chi
    return np.array([[diag1, off], [off, diag2]])


def susceptibility(p: ModelParams, omega) -> np.ndarray:
    """Generalized susceptibility matrix alpha(omega) = (alpha^-1)^-1.

    Raises
    ------
    SingularAtFrequency
        If det alpha^-1 is below tolerance relative to the matrix scale;
        for stable parameters this can only happen off the real axis.
    """
    m = inverse_susceptibility(p, omega)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    scale = (abs(m[0, 0]) + abs(m[0, 1])) * (abs(m[1, 1]) + abs(m[1, 0]))
    if abs(det) <= MATRIX_INVERSE_TOL * 1e-4 * scale:
        raise SingularAtFrequency(f"alpha^-1 singular at omega = {omega}: |det| = {abs(det):.3g}")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / det


@dataclass(frozen=True)
class CharacteristicPolynomial:
    """Degree-5 polynomial h(omega) = sum_m coeffs[m] * omega^m.

    ``freq_scale`` carries the oscillator frequency scale used by the
    near-real-axis test in :func:`find_roots` (max(omega1, omega2, 1)).
    """

    coeffs: np.ndarray
    freq_scale: float = 1.0

    def __call__(self, omega):
        return npoly.polyval(omega, self.coeffs)

    def derivative(self, omega):
        return npoly.polyval(omega, npoly.polyder(self.coeffs))


def build_h_polynomial(p: ModelParams) -> CharacteristicPolynomial:
    """Characteristic polynomial h(omega) = det(alpha^-1)(omega) * (omega_c - i*omega).

    Built from the explicit cancellation form

        h = (a*b - c^2)(omega_c - i*omega) - (a + b - 2c) * 2*gamma*omega_c^2

    with a = w1^2 + Omega^2 + k - omega^2, b likewise for w2, c = Omega^2 - k;
    the chi^2 terms cancel identically in det alpha^-1, so this is exact and
    branch-free.  Leading coefficient is -i, degree exactly 5 for gamma > 0.
    """
    W2 = p.renorm_sq
    a0 = p.omega1**2 + W2 + p.k
    b0 = p.omega2**2 + W2 + p.k
    c = W2 - p.k
    # (a0 - w^2)(b0 - w^2) - c^2, ascending coefficients
    pol = npoly.polymul([a0, 0.0, -1.0], [b0, 0.0, -1.0])
    pol = npoly.polysub(pol, [c * c])
    h = npoly.polymul(pol, [p.omega_c, -1j])
    trace_like = np.array([p.omega1**2 + p.omega2**2 + 4.0 * p.k, 0.0, -2.0])
    h = npoly.polysub(h, 2.0 * p.gamma * p.omega_c**2 * trace_like)
    if len(h) < 6:  # gamma = 0 and exact coefficient collisions cannot occur here
        h = np.pad(h, (0, 6 - len(h)))
    return CharacteristicPolynomial(coeffs=np.asarray(h, dtype=complex),
                                    freq_scale=max(p.omega1, p.omega2, 1.0))


@dataclass(frozen=True)
class RootSet:
    """Five complex roots of h with per-root data.

    ``residuals`` holds |h(z_k)| of the unscaled polynomial; the acceptance
    test applied by :func:`find_roots` uses the rescaled representation, where
    backward-stable evaluation makes the tolerance meaningful.
    """

    roots: np.ndarray
    multiplicities: np.ndarray
    residuals: np.ndarray


def find_roots(h: CharacteristicPolynomial) -> RootSet:
    """All five roots of h, companion-matrix solve plus Newton polishing.

    The variable is rescaled so the roots are O(1) before forming the
    companion matrix, and the residual test |h(z)| < tol * max|c_m| is
    applied in that representation (in the raw variable a cutoff-scale root
    makes the same test unattainable in double precision).

    Raises
    ------
    RootFindingFailure
        If any scaled residual exceeds ROOT_RESIDUAL_TOL * max|c_m|.
    NearRealAxisRoot
        If any root is within REAL_AXIS_TOL_REL * max(omega1, omega2, 1) of
        the real axis (undamped mode; happens at gamma = 0 and at exact
        resonance).
    """
    c = np.asarray(h.coeffs, dtype=complex)
    if len(c) != 6 or abs(c[5]) <= 1e-12 * np.max(np.abs(c)):
        raise RootFindingFailure("expected a well-formed degree-5 polynomial")

    # Fujiwara-style magnitude bound as the rescaling factor
    mags = [abs(c[m] / c[5]) ** (1.0 / (5 - m)) for m in range(5) if c[m] != 0]
    s = max(mags) if mags else 1.0
    s = max(s, 1e-300)
    cs = c * s ** np.arange(6)
    cs = cs / np.max(np.abs(cs))

    w = np.roots(cs[::-1])
    dcs = npoly.polyder(cs)
    for _ in range(_NEWTON_SWEEPS):
        dv = npoly.polyval(w, dcs)
        step = np.where(dv != 0, npoly.polyval(w, cs) / np.where(dv != 0, dv, 1.0), 0.0)
        w = w - step

    res_scaled = np.abs(npoly.polyval(w, cs))
    tol = ROOT_RESIDUAL_TOL * np.max(np.abs(cs))
    if np.any(res_scaled > tol):
        raise RootFindingFailure(
            f"worst scaled residual {res_scaled.max():.3e} exceeds {tol:.3e} after polishing"
        )

    roots = w * s
    axis_tol = REAL_AXIS_TOL_REL * max(h.freq_scale, 1.0)
    if np.any(np.abs(roots.imag) < axis_tol):
        raise NearRealAxisRoot(
            f"root at {roots[np.argmin(np.abs(roots.imag))]:.6g} is within "
            f"{axis_tol:.3g} of the real axis; stationary state undefined"
        )

    order = np.lexsort((roots.imag, roots.real))
    roots = roots[order]
    return RootSet(
        roots=roots,
        multiplicities=np.ones(len(roots), dtype=int),
        residuals=np.abs(npoly.polyval(roots, c)),
    )
