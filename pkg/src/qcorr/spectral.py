"""Stationary power spectra and the asymptotic 4x4 covariance matrix,
computed by two independent routes.

Both modes feel the same fluctuating force (common bath), so the position
spectrum is the outer product of the susceptibility row sums
A_i(omega) = sum_j alpha_ij(omega):

    <x_i x_j>_omega = A_i(omega) A_j(-omega) * pi J(omega) [1 + coth(omega/2T)]

The "+1" piece is odd under exchange/frequency reflection and only feeds the
canonical commutators, which the covariance definition subtracts; the
symmetrized covariance therefore integrates the coth part alone.  Momentum
and cross spectra follow from <p_i x_j>_omega = -i omega <x_i x_j>_omega and
<p_i p_j>_omega = omega^2 <x_i x_j>_omega.

Route 1 (quadrature): invert alpha^-1 numerically at each frequency and
integrate adaptively on a compactified axis with breakpoints at the
resonance positions.

Route 2 (analytic): the row sums collapse to real quadratics over the
characteristic polynomial, A_1 = (w2^2 + 2k - omega^2)/d, and each covariance
becomes the integral of an odd rational function times coth(omega/2T) with
simple poles at the roots z_k of h and their negatives.  Closing the contour
and summing the Matsubara ladder of coth in closed form leaves

    Gamma_entry = -2iT sum_k r_k / z_k  -  (2/pi) sum_k r_k psi(1 + i z_k / 2 pi T)

over the five lower-half-plane roots, with numerically computed residues r_k.
The first term is the classical (equipartition) mean value, the digamma sum
the quantum correction.  At T = 0 the digamma collapses to
-(2/pi) sum_k r_k Log(i z_k).

Basis ordering is R = (x1, p1, x2, p2), vacuum variance 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.integrate import quad_vec

from . import model, specfun
from .errors import DigammaPole, QuadratureNonConvergence, UnphysicalState
from .model import ModelParams

COVARIANCE_TOL = 1e-9
SYMPLECTIC_TOL = 1e-9
QUAD_ABS_TOL = 1e-10
QUAD_REL_TOL = 1e-10

# index pairs of the integrand vector [xx11,xx12,xx22,pp11,pp12,pp22,px12]
_XX = ((0, 0), (0, 2), (2, 2))
_PP = ((1, 1), (1, 3), (3, 3))


def _omega_coth_half(omega: float, temperature: float) -> float:
    """omega * coth(omega / 2T), finite at omega = 0; |omega| at T = 0."""
    if temperature == 0.0:
        return abs(omega)
    u = omega / (2.0 * temperature)
    if abs(u) < 1e-4:
        return 2.0 * temperature * (1.0 + u * u / 3.0)
    return omega / math.tanh(u)


def _force_spectrum_coth(p: ModelParams, omega: float) -> float:
    """pi * J(omega) * coth(omega/2T), evaluated without the 0*inf ambiguity."""
    lorentz = p.omega_c**2 / (p.omega_c**2 + omega * omega)
    return 2.0 * p.gamma * lorentz * _omega_coth_half(omega, p.temperature)


@dataclass(frozen=True)
class PowerSpectrumEval:
    """Position spectrum at one real frequency.

    ``xx`` is the symmetrized (coth) part, real up to rounding and even in
    omega; ``comm`` is the exchange-antisymmetric content of the "+1" force
    term (coefficient of i), which integrates to the canonical commutators.
    """

    omega: float
    xx: np.ndarray
    comm: np.ndarray


def position_spectrum(p: ModelParams, omega: float) -> PowerSpectrumEval:
    """Symmetrized position power spectrum at a real frequency.

    Requires gamma > 0; at gamma = 0 the spectrum degenerates to delta
    functions and the pointwise value is meaningless.
    """
    alpha = model.susceptibility(p, omega)
    rows = alpha.sum(axis=1)
    m = np.outer(rows, rows.conj())
    sym = 0.5 * (m + m.T) * _force_spectrum_coth(p, omega)
    comm = 0.5 * (m - m.T).imag * math.pi * float(model.spectral_density(p, omega))
    return PowerSpectrumEval(omega=float(omega), xx=sym, comm=comm)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Asymptotic covariance matrix over R = (x1, p1, x2, p2).

    ``matrix`` is real symmetric with zero position-momentum cross block (up
    to tolerance); ``method`` tags the producing route and
    ``error_estimate`` its numerical error scale.
    """

    matrix: np.ndarray
    params: Optional[ModelParams]
    method: str
    error_estimate: float

    def validate(self) -> "CovarianceMatrix":
        g = self.matrix
        if g.shape != (4, 4) or not np.all(np.isfinite(g)):
            raise UnphysicalState("covariance matrix malformed")
        if not np.allclose(g, g.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(g).max())):
            raise UnphysicalState("covariance matrix not symmetric")
        diag = np.diag(g)
        if np.any(diag <= 0.0):
            raise UnphysicalState(f"non-positive variance on the diagonal: {diag}")
        cross_tol = COVARIANCE_TOL * max(1.0, diag.max())
        cross = max(abs(g[0, 1]), abs(g[0, 3]), abs(g[2, 1]), abs(g[2, 3]))
        if cross > cross_tol:
            raise UnphysicalState(f"x-p cross covariance {cross:.3e} exceeds {cross_tol:.3e}")
        nu_min = _symplectic_min(g)
        if nu_min < 0.5 - SYMPLECTIC_TOL * max(1.0, diag.max()):
            raise UnphysicalState(f"symplectic eigenvalue {nu_min:.12g} below vacuum bound 1/2")
        return self

    @property
    def position_block(self) -> np.ndarray:
        return self.matrix[np.ix_((0, 2), (0, 2))]

    @property
    def momentum_block(self) -> np.ndarray:
        return self.matrix[np.ix_((1, 3), (1, 3))]


_OMEGA_SYMP = np.array(
    [[0.0, 1.0, 0.0, 0.0],
     [-1.0, 0.0, 0.0, 0.0],
     [0.0, 0.0, 0.0, 1.0],
     [0.0, 0.0, -1.0, 0.0]]
)


def _symplectic_min(gamma_mat: np.ndarray) -> float:
    ev = np.linalg.eigvals(1j * _OMEGA_SYMP @ gamma_mat)
    return float(np.sort(np.abs(ev))[0])


def _assemble(entries: np.ndarray, px12: float, px21: float) -> np.ndarray:
    g = np.zeros((4, 4))
    for (i, j), v in zip(_XX, entries[:3]):
        g[i, j] = g[j, i] = v
    for (i, j), v in zip(_PP, entries[3:6]):
        g[i, j] = g[j, i] = v
    g[1, 2] = g[2, 1] = px12
    g[0, 3] = g[3, 0] = px21
    return g


# ---------------------------------------------------------------------------
# Route 1: adaptive quadrature of the spectra
# ---------------------------------------------------------------------------

def _spectrum_row(p: ModelParams, omega: float) -> np.ndarray:
    """Integrand vector [xx11, xx12, xx22, pp11, pp12, pp22, px12] / 2 pi."""
    alpha = model.susceptibility(p, omega)
    rows = alpha.sum(axis=1)
    m11 = (rows[0] * rows[0].conjugate()).real
    m22 = (rows[1] * rows[1].conjugate()).real
    m12c = rows[0] * rows[1].conjugate()
    w2 = omega * omega
    weight = _force_spectrum_coth(p, omega) / (2.0 * math.pi)
    return weight * np.array(
        [m11, m12c.real, m22,
         w2 * m11, w2 * m12c.real, w2 * m22,
         omega * m12c.imag]
    )


def covariance_quadrature(
    p: ModelParams,
    *,
    abs_tol: float = QUAD_ABS_TOL,
    rel_tol: float = QUAD_REL_TOL,
    limit: int = 800,
) -> CovarianceMatrix:
    """Covariance matrix by adaptive Gauss-Kronrod quadrature of the spectra.

    The frequency axis is compactified with omega = L*u/(1-u^2), u in (-1, 1),
    which turns the power-law tails into polynomially vanishing endpoints;
    fixed breakpoints are planted at u(0), at the resonance positions
    +-|Re z_k| of the characteristic roots, at +-omega_c and at the thermal
    knee +-2T, then Gauss-Kronrod refinement does the rest.

    Raises
    ------
    QuadratureNonConvergence
        If the integrator's error estimate misses max(abs_tol, rel_tol*scale).
    """
    model.validate_params(p)
    roots = model.find_roots(model.build_h_polynomial(p)).roots

    scale = max(p.omega1, p.omega2, 1.0)

    def to_u(w: float) -> float:
        return (-scale + math.sqrt(scale * scale + 4.0 * w * w)) / (2.0 * w) if w else 0.0

    breaks = {0.0, p.omega_c}
    breaks.update(abs(z.real) for z in roots)
    if p.temperature > 0.0:
        breaks.add(2.0 * p.temperature)
    upoints = sorted({s * to_u(w) for w in breaks if w > 0.0 for s in (-1.0, 1.0)} | {0.0})

    def f(u: float) -> np.ndarray:
        om = scale * u / (1.0 - u * u)
        jac = scale * (1.0 + u * u) / (1.0 - u * u) ** 2
        return _spectrum_row(p, om) * jac

    vec, err = quad_vec(
        f, -1.0, 1.0,
        epsabs=abs_tol / 10.0, epsrel=rel_tol / 10.0,
        points=upoints, limit=limit, norm="max", quadrature="gk21",
    )
    target = max(abs_tol, rel_tol * float(np.max(np.abs(vec))))
    if not np.isfinite(err) or err > target:
        raise QuadratureNonConvergence(
            f"quadrature error estimate {err:.3e} exceeds target {target:.3e}", achieved=err
        )

    g = _assemble(vec[:6], px12=vec[6], px21=-vec[6])
    return CovarianceMatrix(matrix=g, params=p, method="quadrature",
                            error_estimate=float(err)).validate()


# ---------------------------------------------------------------------------
# Route 2: residues and the digamma closed form
# ---------------------------------------------------------------------------

def _numerators(p: ModelParams):
    """Spectral numerators: N_i are the real quadratics the row sums reduce to."""
    n1 = np.array([p.omega2**2 + 2.0 * p.k, 0.0, -1.0])
    n2 = np.array([p.omega1**2 + 2.0 * p.k, 0.0, -1.0])
    return n1, n2


def _analytic_terms(p: ModelParams):
    """Classical and quantum parts of every covariance entry.

    Returns (classical, quantum) 7-vectors in the layout of _spectrum_row;
    the px entry is identically zero in this representation because the
    numerators are real on the real axis.
    """
    model.validate_params(p)
    h = model.build_h_polynomial(p)
    roots = model.find_roots(h).roots
    poles = np.concatenate([roots, -roots])
    # h has leading coefficient -i, so h(w)h(-w) has leading -(-i)^2 = +1
    lead = -h.coeffs[5] ** 2

    n1, n2 = _numerators(p)
    prefactor = 2.0 * p.gamma * p.omega_c**2
    combos = [
        npoly.polymul(n1, n1), npoly.polymul(n1, n2), npoly.polymul(n2, n2),
    ]

    t = p.temperature
    if t > 0.0:
        try:
            psi = np.array([specfun.digamma(1.0 + 1j * z / (2.0 * math.pi * t)) for z in roots])
        except DigammaPole:
            # a root colliding with a Matsubara frequency; one ulp-scale nudge
            t = t * (1.0 + 2.0**-40)
            psi = np.array([specfun.digamma(1.0 + 1j * z / (2.0 * math.pi * t)) for z in roots])
    else:
        psi = np.array([np.log(1j * z) for z in roots])

    classical = np.zeros(7)
    quantum = np.zeros(7)
    leak = 0.0
    for slot, base in enumerate(combos):
        for ppow, off in ((1, 0), (3, 3)):
            num = prefactor * npoly.polymul(base, [0.0] * ppow + [1.0])
            pf = specfun.partial_fractions(num, poles, leading=lead)
            res = pf.residues[: len(roots)]
            cl = -2j * t * np.sum(res / roots) if t > 0.0 else 0.0 + 0.0j
            qu = -(2.0 / math.pi) * np.sum(res * psi)
            classical[off + slot] = cl.real
            quantum[off + slot] = qu.real
            leak = max(leak, abs(cl.imag), abs(qu.imag))
    return classical, quantum, leak


def covariance_analytic(p: ModelParams) -> CovarianceMatrix:
    """Covariance matrix from the residue / digamma closed form.

    No numerical integration: the rational spectral kernels are decomposed
    into partial fractions over the ten poles {z_k} U {-z_k}, the Matsubara
    ladder of coth is summed in closed form into digamma terms at the five
    stable roots, and the remaining linear-in-T piece is the classical mean
    value.  The position-momentum cross block vanishes identically.
    """
    classical, quantum, leak = _analytic_terms(p)
    vec = classical + quantum
    g = _assemble(vec[:6], px12=0.0, px21=0.0)
    return CovarianceMatrix(matrix=g, params=p, method="analytic",
                            error_estimate=float(leak)).validate()


def covariance_analytic_split(p: ModelParams):
    """The (classical mean, quantum correction) split of the analytic route.

    Exposed for inspection: only the sum is contracted, since constant terms
    could be shuffled between the two pieces by an equally valid convention.
    Returns two 4x4 matrices (classical, quantum).
    """
    classical, quantum, _ = _analytic_terms(p)
    return (
        _assemble(classical[:6], px12=0.0, px21=0.0),
        _assemble(quantum[:6], px12=0.0, px21=0.0),
    )
