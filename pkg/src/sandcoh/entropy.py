"""Sandwiched Renyi relative entropy and the order parameter's regimes."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import AlphaOutOfRange, DimensionMismatch, SupportViolation
from .matcore import SUPPORT_CUTOFF, _as_matrix, frac_power, herm_eig, trace_power_psd

# The alpha -> 1 limit needs a separate formula and is deliberately not
# implemented; orders inside this band are rejected everywhere.
GUARD_BAND = 1e-3


class Regime(enum.Enum):
    """Validity range of a Renyi order."""

    S1 = "s1"  # [1/2, 1): the 1 - max(...) measure family
    S = "s"  # [1/2, 1) u (1, inf): the signed-min measure family
    ENTROPY = "entropy"  # (0, inf) \ {1}: the relative entropy itself


_RANGES = {
    Regime.S1: lambda v: 0.5 <= v < 1.0,
    Regime.S: lambda v: 0.5 <= v < 1.0 or v > 1.0,
    Regime.ENTROPY: lambda v: v > 0.0,
}


@dataclass(frozen=True)
class Alpha:
    """Renyi order with a regime tag restricting it to a valid range."""

    value: float
    regime: Regime = Regime.ENTROPY

    def __post_init__(self):
        v = float(self.value)
        if abs(v - 1.0) < GUARD_BAND:
            raise AlphaOutOfRange(f"alpha={v} inside the guard band around 1")
        if not _RANGES[self.regime](v):
            raise AlphaOutOfRange(f"alpha={v} invalid for regime {self.regime.value}")
        object.__setattr__(self, "value", v)

    def __float__(self) -> float:
        return self.value


def as_alpha(alpha, regime: Regime) -> Alpha:
    """Coerce a float (or re-tag an Alpha) into the given regime."""
    return Alpha(float(alpha), regime)


def sandwiched_renyi(sigma_m, rho, alpha) -> float:
    """F_alpha(sigma || rho) = ln tr[(rho^c sigma rho^c)^alpha] / (alpha - 1).

    Here c = (1-alpha)/(2 alpha). Nonnegative for all valid orders, zero
    exactly when sigma = rho, and monotone under CPTP maps on both
    arguments. For alpha > 1, supp(sigma) must lie inside supp(rho).
    """
    a = float(as_alpha(alpha, Regime.ENTROPY))
    smat = _as_matrix(sigma_m)
    rmat = _as_matrix(rho)
    if smat.shape != rmat.shape:
        raise DimensionMismatch("state dimensions differ")
    if a > 1.0:
        eig = herm_eig(rmat)
        w = eig.eigenvalues
        tau = SUPPORT_CUTOFF * max(float(w[-1]), 0.0)
        kernel = eig.eigenvectors[:, w <= tau]
        if kernel.shape[1] > 0:
            leak = np.real(np.trace(kernel.conj().T @ smat @ kernel))
            if leak > 1e-10:
                raise SupportViolation("supp(sigma) not contained in supp(rho)")
    c = (1.0 - a) / (2.0 * a)
    big_a = frac_power(rmat, c)
    val = trace_power_psd(big_a @ smat @ big_a, a)
    return float(np.log(val) / (a - 1.0))
