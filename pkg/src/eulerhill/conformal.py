"""Joukowski change of spectral variable and the potential's Fourier data.

The temporal parameter c and the disk variable s are linked by
2c = s + 1/s; of the two roots we always keep the one inside the unit
disk, which makes s(c) holomorphic off the real segment [-1, 1].
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum

from .errors import BranchCutError, PotentialPoleError, SingularPotentialError

#: Exact powers of i, indexed by exponent mod 4.
I_POW = (1.0 + 0.0j, 1j, -1.0 + 0.0j, -1j)

#: |Im c| below this is treated as exactly real for cut detection.
CUT_IMAG_TOL = 1e-14


class Side(Enum):
    UPPER = "upper"
    LOWER = "lower"
    NOT_ON_CUT = "off"


@dataclass(frozen=True)
class SpectralParam:
    c: complex
    s: complex
    kappa: complex
    side: Side = Side.NOT_ON_CUT

    @property
    def g0(self) -> complex:
        return 1.0 + self.kappa


def cut_distance(c: complex) -> float:
    """Distance from c to the segment [-1, 1] on the real axis."""
    c = complex(c)
    if abs(c.real) <= 1.0:
        return abs(c.imag)
    return min(abs(c - 1.0), abs(c + 1.0))


def s_of_c(c: complex) -> SpectralParam:
    """Map c to the root s of s^2 - 2cs + 1 = 0 inside the unit disk.

    Root selection is by modulus comparison (the two roots multiply to 1)
    rather than a fixed square-root branch, and the small root is formed
    as 1/(large root) to avoid cancellation for large |c|.
    """
    c = complex(c)
    if abs(c.imag) < CUT_IMAG_TOL:
        if abs(abs(c.real) - 1.0) < CUT_IMAG_TOL:
            raise SingularPotentialError(f"c = {c} is a cut endpoint (|s| = 1)")
        if abs(c.real) < 1.0:
            raise BranchCutError(
                f"c = {c} lies on the branch cut (-1, 1); "
                "use s_at_origin for the c = 0 limits"
            )
    r = cmath.sqrt(c * c - 1.0)
    big = c + r if abs(c + r) >= abs(c - r) else c - r
    s = 1.0 / big
    kappa = -(1.0 + s * s) / (1.0 - s * s)
    return SpectralParam(c=c, s=s, kappa=kappa, side=Side.NOT_ON_CUT)


def s_at_origin(side: Side) -> SpectralParam:
    """Limit of s(c) as c -> 0 from the requested side of the cut.

    Approaching from above (Side.UPPER) gives s = -i, from below s = +i;
    in both limits kappa = 0 exactly so the potential's Fourier series
    collapses to the constant 1.
    """
    if side == Side.UPPER:
        s = -1j
    elif side == Side.LOWER:
        s = 1j
    else:
        raise BranchCutError("c = 0 requires an explicit side (UPPER or LOWER)")
    return SpectralParam(c=0.0 + 0.0j, s=s, kappa=0.0 + 0.0j, side=side)


def fourier_coeff(sp: SpectralParam, k: int) -> complex:
    """k-th Fourier coefficient of sin(eta)/(c + sin(eta)).

    g_0 = 1 + kappa and g_k = kappa * i^k * s^|k| otherwise.
    """
    if k == 0:
        return sp.g0
    return sp.kappa * I_POW[k % 4] * sp.s ** abs(k)


def potential(eta: float, c: complex) -> complex:
    """Pointwise value of Q(eta) = sin(eta)/(c + sin(eta))."""
    se = cmath.sin(eta)
    den = c + se
    if abs(den) < 1e-14 * max(1.0, abs(c)):
        raise PotentialPoleError(f"potential pole at eta = {eta} for c = {c}")
    return se / den
