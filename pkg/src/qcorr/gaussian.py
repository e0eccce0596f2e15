"""Two-mode Gaussian state measures: symplectic spectra, PPT test,
logarithmic negativity, Gaussian quantum discord, purities and EPR-quadrature
variances.

All inputs are 4x4 covariance matrices over R = (x1, p1, x2, p2) in the
vacuum-variance-1/2 convention (Gamma).  Internally everything is rescaled
once to sigma = 2*Gamma, where pure single-mode states have symplectic
eigenvalue 1 and the standard closed forms apply unchanged; this avoids
scattering factors of two through the formulas.  Logarithms are natural, so
entanglement and discord come out in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnphysicalState

SYMPLECTIC_TOL = 1e-9

_SWAP = np.zeros((4, 4))
_SWAP[0, 2] = _SWAP[1, 3] = _SWAP[2, 0] = _SWAP[3, 1] = 1.0

_OMEGA_SYMP = np.array(
    [[0.0, 1.0, 0.0, 0.0],
     [-1.0, 0.0, 0.0, 0.0],
     [0.0, 0.0, 0.0, 1.0],
     [0.0, 0.0, -1.0, 0.0]]
)


def _gamma_of(state) -> np.ndarray:
    """Accept a CovarianceMatrix-like object or a bare 4x4 array."""
    mat = getattr(state, "matrix", state)
    g = np.asarray(mat, dtype=float)
    if g.shape != (4, 4):
        raise ValueError(f"expected a 4x4 covariance matrix, got shape {g.shape}")
    return g


@dataclass(frozen=True)
class SymplecticInvariants:
    """Determinant invariants of sigma = 2*Gamma: single-mode blocks (a, b),
    cross block (c) and the full matrix (d)."""

    a: float
    b: float
    c: float
    d: float


def symplectic_invariants(state) -> SymplecticInvariants:
    s = 2.0 * _gamma_of(state)
    return SymplecticInvariants(
        a=float(np.linalg.det(s[:2, :2])),
        b=float(np.linalg.det(s[2:, 2:])),
        c=float(np.linalg.det(s[:2, 2:])),
        d=float(np.linalg.det(s)),
    )


def _nu_pair(inv: SymplecticInvariants):
    delta = inv.a + inv.b + 2.0 * inv.c
    disc = max(delta * delta - 4.0 * inv.d, 0.0)
    root = math.sqrt(disc)
    nu_minus = math.sqrt(max((delta - root) / 2.0, 0.0))
    nu_plus = math.sqrt(max((delta + root) / 2.0, 0.0))
    return nu_minus, nu_plus


def symplectic_eigenvalues(state):
    """Symplectic eigenvalues (nu_minus, nu_plus) of sigma = 2*Gamma.

    Physical states satisfy nu_minus >= 1 in this convention.

    Raises
    ------
    UnphysicalState
        If nu_minus < 1 - tolerance.
    """
    nu_minus, nu_plus = _nu_pair(symplectic_invariants(state))
    if nu_minus < 1.0 - SYMPLECTIC_TOL:
        raise UnphysicalState(f"nu_minus = {nu_minus:.12g} < 1: not a physical state")
    return nu_minus, nu_plus


def symplectic_eigenvalues_direct(state):
    """Oracle route: moduli of the eigenvalues of i*Omega*sigma (each twice)."""
    s = 2.0 * _gamma_of(state)
    ev = np.sort(np.abs(np.linalg.eigvals(1j * _OMEGA_SYMP @ s)))
    return float(ev[0]), float(ev[2])


def pt_symplectic_minimum(state) -> float:
    """Lowest symplectic eigenvalue of the partially transposed sigma.

    Partial transposition flips the sign of one mode's momentum, which maps
    the invariant c -> -c; values below 1 certify entanglement.
    """
    inv = symplectic_invariants(state)
    flipped = SymplecticInvariants(a=inv.a, b=inv.b, c=-inv.c, d=inv.d)
    return _nu_pair(flipped)[0]


def log_negativity(state) -> float:
    """Logarithmic negativity E_N = max(0, -ln nu~_minus), in nats."""
    symplectic_eigenvalues(state)  # physicality gate
    return max(0.0, -math.log(pt_symplectic_minimum(state)))


def _entropy_f(x: float) -> float:
    """f(x) = ((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2); f(1) = 0."""
    if x <= 1.0:
        return 0.0
    return ((x + 1.0) / 2.0) * math.log((x + 1.0) / 2.0) - \
           ((x - 1.0) / 2.0) * math.log((x - 1.0) / 2.0)


def _discord_from_invariants(inv: SymplecticInvariants) -> float:
    a, b, c, d = inv.a, inv.b, inv.c, inv.d
    nu_minus, nu_plus = _nu_pair(inv)
    if nu_minus < 1.0 - SYMPLECTIC_TOL:
        raise UnphysicalState(f"nu_minus = {nu_minus:.12g} < 1: not a physical state")

    # minimum conditional determinant over Gaussian measurements on mode two;
    # the first branch degenerates as b -> 1 (pure measured mode forces a
    # product state), where the second expression is the regular limit
    if (d - a * b) ** 2 <= (1.0 + b) * c * c * (a + d) and (b - 1.0) ** 2 > 1e-14:
        e_min = (2.0 * c * c + (b - 1.0) * (d - a)
                 + 2.0 * abs(c) * math.sqrt(c * c + (b - 1.0) * (d - a))) / (b - 1.0) ** 2
    else:
        e_min = (a * b - c * c + d
                 - math.sqrt(max(c**4 + (d - a * b) ** 2 - 2.0 * c * c * (a * b + d), 0.0))) \
                / (2.0 * b)
    return max(
        0.0,
        _entropy_f(math.sqrt(max(b, 1.0)))
        - _entropy_f(nu_plus)
        - _entropy_f(nu_minus)
        + _entropy_f(math.sqrt(max(e_min, 1.0))),
    )


def gaussian_discord_mode2(state) -> float:
    """Gaussian quantum discord with the generalized measurement on mode two.

    Closed form in the symplectic invariants; the measurement optimization
    has the standard two-branch solution for the minimal conditional
    determinant.  Output in nats.
    """
    return _discord_from_invariants(symplectic_invariants(state))


def gaussian_discord_mode1(state) -> float:
    """Mode-one-measured variant: same closed form on the mode-swapped state."""
    g = _gamma_of(state)
    return _discord_from_invariants(symplectic_invariants(_SWAP @ g @ _SWAP.T))


def discord_measurement_scan(
    state,
    n_lambda: int = 48,
    n_theta: int = 36,
    polish: bool = True,
) -> float:
    """Brute-force discord oracle: minimize the conditional entropy over a
    grid of single-mode Gaussian measurement covariances diag(l, 1/l) rotated
    by theta, l on a log grid in [1e-3, 1e3], theta in [0, pi).

    Independent of the closed form; optionally polished with Nelder-Mead from
    the best grid point.
    """
    inv = symplectic_invariants(state)
    s = 2.0 * _gamma_of(state)
    a_blk, c_blk, b_blk = s[:2, :2], s[:2, 2:], s[2:, 2:]

    def cond_det(log_lam: float, theta: float) -> float:
        lam = math.exp(log_lam)
        co, si = math.cos(theta), math.sin(theta)
        rot = np.array([[co, -si], [si, co]])
        meas = rot @ np.diag([lam, 1.0 / lam]) @ rot.T
        post = a_blk - c_blk @ np.linalg.inv(b_blk + meas) @ c_blk.T
        return float(np.linalg.det(post))

    lams = np.log(np.logspace(-3, 3, n_lambda))
    thetas = np.linspace(0.0, np.pi, n_theta, endpoint=False)
    best, best_arg = np.inf, (0.0, 0.0)
    for ll in lams:
        for th in thetas:
            v = cond_det(ll, th)
            if v < best:
                best, best_arg = v, (ll, th)
    if polish:
        from scipy.optimize import minimize

        opt = minimize(lambda x: cond_det(x[0], x[1]), best_arg, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400})
        if opt.fun < best:
            best = float(opt.fun)

    nu_minus, nu_plus = _nu_pair(inv)
    return max(
        0.0,
        _entropy_f(math.sqrt(max(inv.b, 1.0)))
        - _entropy_f(nu_plus)
        - _entropy_f(nu_minus)
        + _entropy_f(math.sqrt(max(best, 1.0))),
    )


@dataclass(frozen=True)
class PurityEprReport:
    """Purities and EPR-quadrature variances of a two-mode state.

    EPR variances are in Gamma units (vacuum value 1/2 each);
    ``nu_tilde_proxy`` = 2*sqrt(<eta_-^2><pi_+^2>) compares directly with the
    PT symplectic eigenvalue when the state decouples in the sum/difference
    quadratures (entanglement iff the product drops below 1/4).
    """

    mu: float
    mu1: float
    mu2: float
    eta_plus_var: float
    eta_minus_var: float
    pi_plus_var: float
    pi_minus_var: float
    nu_tilde_proxy: float


def purities_and_epr(state) -> PurityEprReport:
    g = _gamma_of(state)
    s = 2.0 * g
    mu = 1.0 / math.sqrt(np.linalg.det(s))
    mu1 = 1.0 / math.sqrt(np.linalg.det(s[:2, :2]))
    mu2 = 1.0 / math.sqrt(np.linalg.det(s[2:, 2:]))
    eta_p = float(0.5 * (g[0, 0] + g[2, 2] + 2.0 * g[0, 2]))
    eta_m = float(0.5 * (g[0, 0] + g[2, 2] - 2.0 * g[0, 2]))
    pi_p = float(0.5 * (g[1, 1] + g[3, 3] + 2.0 * g[1, 3]))
    pi_m = float(0.5 * (g[1, 1] + g[3, 3] - 2.0 * g[1, 3]))
    return PurityEprReport(
        mu=mu, mu1=mu1, mu2=mu2,
        eta_plus_var=eta_p, eta_minus_var=eta_m,
        pi_plus_var=pi_p, pi_minus_var=pi_m,
        nu_tilde_proxy=2.0 * math.sqrt(max(eta_m * pi_p, 0.0)),
    )


@dataclass(frozen=True)
class CorrelationReport:
    """Everything the sweeps record about one stationary state."""

    log_negativity: float
    discord_mode2: float
    nu_minus: float
    nu_plus: float
    nu_tilde_minus: float
    mu: float
    mu1: float
    mu2: float
    eta_plus_var: float
    eta_minus_var: float
    pi_plus_var: float
    pi_minus_var: float


def correlation_report(state) -> CorrelationReport:
    """Assemble the full set of correlation measures for one state."""
    nu_minus, nu_plus = symplectic_eigenvalues(state)
    pe = purities_and_epr(state)
    return CorrelationReport(
        log_negativity=log_negativity(state),
        discord_mode2=gaussian_discord_mode2(state),
        nu_minus=nu_minus,
        nu_plus=nu_plus,
        nu_tilde_minus=pt_symplectic_minimum(state),
        mu=pe.mu, mu1=pe.mu1, mu2=pe.mu2,
        eta_plus_var=pe.eta_plus_var, eta_minus_var=pe.eta_minus_var,
        pi_plus_var=pe.pi_plus_var, pi_minus_var=pe.pi_minus_var,
    )


def random_physical_covariance(rng: np.random.Generator, mix_scale: float = 0.6) -> np.ndarray:
    """Random physical two-mode Gamma: thermal symplectic spectrum conjugated
    by exp(Omega*A) with symmetric A.  Used by the validation harness and the
    property tests."""
    from scipy.linalg import expm

    sym = rng.normal(size=(4, 4)) * mix_scale
    sym = 0.5 * (sym + sym.T)
    s_transf = expm(_OMEGA_SYMP @ sym)
    nus = 1.0 + rng.exponential(0.8, size=2)
    sigma = s_transf @ np.diag([nus[0], nus[0], nus[1], nus[1]]) @ s_transf.T
    return 0.5 * (sigma + sigma.T) / 2.0
