"""Special functions and numeric kernels for the analytic covariance route:
complex digamma, numerically stable coth, and partial-fraction residues of
rational integrands with known simple poles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import CothPole, DegeneratePoles, DigammaPole

EULER_GAMMA = 0.5772156649015328606

# psi(z) ~ ln z - 1/(2z) - sum B_{2n}/(2n z^{2n}), truncated at B_14; with the
# |z| > 10 shift threshold the next term is < 1e-16 relative.
_ASYM_SHIFT = 10.0
_BERN_OVER_2N = (
    1.0 / 12.0,          # B2/2
    -1.0 / 120.0,        # B4/4
    1.0 / 252.0,         # B6/6
    -1.0 / 240.0,        # B8/8
    1.0 / 132.0,         # B10/10
    -691.0 / 32760.0,    # B12/12
    1.0 / 12.0,          # B14/14
)

DIGAMMA_POLE_TOL = 1e-12
COTH_POLE_TOL = 1e-12
COTH_SMALL = 1e-4
POLE_MERGE_TOL_REL = 1e-7


def _cot(w: complex) -> complex:
    # cot(w) = i(q+1)/(q-1) with q = e^{2iw}; pick the decaying exponential
    if w.imag >= 0:
        q = cmath.exp(2j * w)
        return 1j * (q + 1.0) / (q - 1.0)
    q = cmath.exp(-2j * w)
    return 1j * (1.0 + q) / (1.0 - q)


def digamma(z) -> complex:
    """Digamma function psi(z) for complex z, >= 1e-12 relative accuracy.

    Upward recurrence psi(z) = psi(z+1) - 1/z until |z| > 10, then the
    Bernoulli asymptotic series; reflection formula for Re z < 0.

    Raises
    ------
    DigammaPole
        If z is within tolerance of a non-positive integer.
    """
    z = complex(z)
    if z.real <= 0.5:
        n = round(z.real)
        if n <= 0 and abs(z - n) < DIGAMMA_POLE_TOL * max(1.0, abs(n)):
            raise DigammaPole(f"digamma pole at z = {z}")
        if z.real < 0:
            # psi(z) = psi(1 - z) - pi*cot(pi*z)
            return digamma(1.0 - z) - math.pi * _cot(math.pi * z)
    acc = 0.0 + 0.0j
    while abs(z) <= _ASYM_SHIFT:
        acc -= 1.0 / z
        z += 1.0
    u = 1.0 / (z * z)
    series = 0.0
    for b in reversed(_BERN_OVER_2N):
        series = u * (b + series)
    return acc + cmath.log(z) - 0.5 / z - series


def coth(u) -> complex:
    """coth(u) for complex u, stable near the origin.

    For |u| < 1e-4 the Laurent form 1/u + u/3 avoids cancellation; large
    |Re u| saturates to +-1 without overflow.

    Raises
    ------
    CothPole
        If u is within tolerance of a pole i*pi*n (including u = 0 exactly).
    """
    u = complex(u)
    n = round(u.imag / math.pi)
    center = 1j * math.pi * n
    if abs(u - center) < COTH_POLE_TOL * max(1.0, abs(center)):
        raise CothPole(f"coth pole near i*pi*{n}, u = {u}")
    if abs(u) < COTH_SMALL:
        return 1.0 / u + u / 3.0
    if u.real > 0:
        q = cmath.exp(-2.0 * u)
        return (1.0 + q) / (1.0 - q)
    q = cmath.exp(2.0 * u)
    return -(1.0 + q) / (1.0 - q)


@dataclass(frozen=True)
class PartialFraction:
    """Decomposition F(w) = sum_k residues[k] / (w - poles[k]).

    Valid only for strictly proper rational functions that decay at least
    like w^-2 (empty polynomial part), which is what the covariance
    integrands satisfy.
    """

    poles: np.ndarray
    residues: np.ndarray

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        return (self.residues / (w[..., None] - self.poles)).sum(axis=-1)


def partial_fractions(numerator, poles, leading=1.0) -> PartialFraction:
    """Residues of numerator(w) / (leading * prod_k (w - poles[k])).

    The denominator derivative at each pole is the analytically
    differentiated product, so each residue is
    numerator(p) / (leading * prod_{q != p} (p - q)).

    Parameters
    ----------
    numerator : array_like
        Ascending polynomial coefficients; degree must not exceed
        len(poles) - 2 so the decomposition has no polynomial part.
    poles : array_like
        Simple poles; pairwise separation must exceed
        POLE_MERGE_TOL_REL * max|pole|.
    leading : complex
        Leading coefficient of the denominator.

    Raises
    ------
    DegeneratePoles
        If two poles are closer than the merge tolerance.
    """
    numerator = np.atleast_1d(np.asarray(numerator, dtype=complex))
    poles = np.asarray(poles, dtype=complex)
    npol = len(poles)
    deg = len(numerator) - 1
    if deg > npol - 2:
        raise ValueError(f"numerator degree {deg} too high for {npol} poles (needs decay)")

    diff = poles[:, None] - poles[None, :]
    off = ~np.eye(npol, dtype=bool)
    merge_tol = POLE_MERGE_TOL_REL * max(np.max(np.abs(poles)), 1e-300)
    closest = np.min(np.abs(diff[off]))
    if closest <= merge_tol:
        raise DegeneratePoles(
            f"pole separation {closest:.3e} below merge tolerance {merge_tol:.3e}"
        )

    dprod = np.prod(np.where(off, diff, 1.0), axis=1)
    residues = npoly.polyval(poles, numerator) / (leading * dprod)
    return PartialFraction(poles=poles, residues=residues)
