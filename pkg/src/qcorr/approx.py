"""Closed-form approximations used as independent cross-checks of the exact
engine: weak-dissipation covariances, first-order characteristic roots, and
the closed two-oscillator effective model behind the strong-dissipation
entanglement threshold.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import model, specfun
from .errors import DomainWarning, UnstablePotential
from .model import ModelParams
from .spectral import CovarianceMatrix

WEAK_GAMMA_RATIO = 0.01
WEAK_TEMP_RATIO = 0.1


def weak_dissipation_covariances(p: ModelParams) -> np.ndarray:
    """First-order-in-gamma covariances for uncoupled modes (k = 0) at low T.

    Evaluates the four closed-form families <x_i^2>, <p_i^2>, <x1 x2>,
    <p1 p2> and returns them assembled as a 4x4 matrix with a zero
    position-momentum block.  In <x_i^2> the constant -1/2 is grouped under
    the 4/omega_c^2 factor together with the logarithm; the alternative
    grouping (a bare -1/2 inside the big bracket) misses the exact engine by
    O(gamma) instead of O(gamma^2) and is wrong.

    Valid for gamma/omega_c << 1 and T << omega_i; outside that region a
    DomainWarning is emitted and the formulas are evaluated anyway.
    """
    model.validate_params(p)
    if p.k != 0.0:
        warnings.warn("weak-dissipation formulas assume k = 0; evaluating anyway",
                      DomainWarning, stacklevel=2)
    if p.gamma > WEAK_GAMMA_RATIO * p.omega_c or \
            p.temperature > WEAK_TEMP_RATIO * min(p.omega1, p.omega2):
        warnings.warn(
            f"outside validity region (gamma/omega_c = {p.gamma / p.omega_c:.3g}, "
            f"T/min(omega_i) = {p.temperature / min(p.omega1, p.omega2):.3g})",
            DomainWarning, stacklevel=2,
        )

    g, wc = p.gamma, p.omega_c
    w = (p.omega1, p.omega2)
    out = np.zeros((4, 4))
    for idx, wi in enumerate(w):
        lg = math.log(wc / wi)
        xx = 1.0 / (2.0 * wi) - g / (2.0 * math.pi) * (
            (2.0 * wc - math.pi * wi) / (wi * wi * wc) + 4.0 / wc**2 * (lg - 0.5)
        )
        pp = wi / 2.0 + g / (2.0 * math.pi) * (
            3.0 * math.pi * wi / wc - 2.0 + 4.0 * lg
        )
        out[2 * idx, 2 * idx] = xx
        out[2 * idx + 1, 2 * idx + 1] = pp
    w1sq, w2sq = w[0] ** 2, w[1] ** 2
    out[0, 2] = out[2, 0] = 2.0 * g * math.log(w[1] / w[0]) / (math.pi * (w1sq - w2sq))
    out[1, 3] = out[3, 1] = g * math.log(16.0) / (2.0 * math.pi) + g * (
        w1sq * math.log(wc**2 / (4.0 * w1sq)) - w2sq * math.log(wc**2 / (4.0 * w2sq))
    ) / (math.pi * (w1sq - w2sq))
    return out


def perturbative_roots(p: ModelParams) -> np.ndarray:
    """First-order characteristic roots for k = 0 and gamma/omega_c << 1.

    Four oscillator roots +-omega_i +- gamma*omega_c/(omega_i -+ i*omega_c)
    (signs taken together) plus the cutoff root
    i*omega_c - 2i*gamma*omega_c^2 (w1^2 + w2^2 + 2 omega_c^2) / prod_i (w_i^2 + omega_c^2).

    These sit in the half plane opposite to the retarded-pole convention of
    find_roots; negation (equivalently conjugation, the two coincide on this
    root set) maps them onto the stable roots.
    """
    model.validate_params(p)
    g, wc = p.gamma, p.omega_c
    roots = []
    for wi in (p.omega1, p.omega2):
        roots.append(wi + g * wc / (wi - 1j * wc))
        roots.append(-wi - g * wc / (wi + 1j * wc))
    cutoff = 1j * wc - 2j * g * wc**2 * (p.omega1**2 + p.omega2**2 + 2.0 * wc**2) / (
        (p.omega1**2 + wc**2) * (p.omega2**2 + wc**2)
    )
    roots.append(cutoff)
    roots = np.asarray(roots, dtype=complex)
    return roots[np.lexsort((roots.imag, roots.real))]


@dataclass(frozen=True)
class EffectiveModelParams:
    """Closed two-oscillator model: H = sum_i [p_i^2/2 + omega_i^2 x_i^2/2]
    + coupling * x1 x2 at a given temperature.

    ``omega1``/``omega2`` are the dressed diagonal frequencies (bare plus
    whatever counterterm or spring shift applies) and ``coupling`` the signed
    net bilinear coefficient; for the bath-mediated case that is Omega^2, and
    with a mechanical spring the two effects combine to Omega^2 - k.
    Degenerate frequencies are allowed here: the model is closed, so its
    Gibbs state is unique regardless.
    """

    omega1: float
    omega2: float
    coupling: float
    temperature: float


def effective_model_params(p: ModelParams) -> EffectiveModelParams:
    """Map full bath parameters onto the effective closed model."""
    w2 = p.renorm_sq
    return EffectiveModelParams(
        omega1=math.sqrt(p.omega1**2 + w2 + p.k),
        omega2=math.sqrt(p.omega2**2 + w2 + p.k),
        coupling=w2 - p.k,
        temperature=p.temperature,
    )


def effective_model_covariance(e: EffectiveModelParams) -> CovarianceMatrix:
    """Exact Gibbs-state covariance of the closed model by normal modes.

    Diagonalize the potential matrix [[w1^2, c], [c, w2^2]], fill each normal
    mode with <q^2> = coth(W/2T)/(2W) and <p^2> = (W/2) coth(W/2T), rotate
    back.

    Raises
    ------
    UnstablePotential
        If a normal-mode frequency squared is not positive.
    """
    pot = np.array([[e.omega1**2, e.coupling], [e.coupling, e.omega2**2]])
    evals, rot = np.linalg.eigh(pot)
    if np.any(evals <= 0.0):
        raise UnstablePotential(f"normal-mode frequencies squared: {evals}")
    freqs = np.sqrt(evals)
    if e.temperature > 0.0:
        th = np.array([complex(specfun.coth(f / (2.0 * e.temperature))).real for f in freqs])
    else:
        th = np.ones_like(freqs)
    xq = th / (2.0 * freqs)
    pq = freqs * th / 2.0
    xx = rot @ np.diag(xq) @ rot.T
    pp = rot @ np.diag(pq) @ rot.T
    g = np.zeros((4, 4))
    g[np.ix_((0, 2), (0, 2))] = xx
    g[np.ix_((1, 3), (1, 3))] = pp
    return CovarianceMatrix(matrix=g, params=None, method="effective-model",
                            error_estimate=0.0).validate()
