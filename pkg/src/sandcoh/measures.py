"""The two sandwiched-Renyi coherence measure families.

c_s1 maximizes tr[(rho^c sigma rho^c)^a] over incoherent sigma and reports
1 - (max)^{1/(1-a)}; c_s optimizes tr[(sigma^c rho sigma^c)^a] and reports
the signed expression ((opt)^{1/a} - 1)/(a - 1). Both expose analytic
gradients of the inner trace functionals, derived from the spectral
calculus d tr[M^a] = a tr[M^{a-1} dM].
"""

from dataclasses import dataclass

import numpy as np

from .entropy import Regime, as_alpha
from .errors import AlphaOutOfRange, NotQubit
from .matcore import SUPPORT_CUTOFF, frac_power
from .simplexopt import (
    OptimizationReport,
    OptimizerConfig,
    Sense,
    SimplexObjective,
    grid_search,
    mirror_ascend,
)
from .states import DensityMatrix, ProbVector, PureState, dephase

# Lattice resolutions for the grid oracle, per dimension.
GRID_RESOLUTIONS = {1: 1, 2: 10**4, 3: 200, 4: 40}


@dataclass(frozen=True)
class MeasureResult:
    value: float
    optimal_sigma: ProbVector
    report: OptimizationReport
    method: str  # "optimizer" | "pure-closed-form" | "grid-oracle"


def _clamped_spectrum(m):
    w, v = np.linalg.eigh(m)
    w = np.where(w < 0.0, 0.0, w)
    tau = SUPPORT_CUTOFF * max(float(w[-1]), 0.0)
    return w, v, w > tau


def rho_sandwich_objective(rho: DensityMatrix, alpha: float) -> SimplexObjective:
    """Q(s) = tr[(rho^c diag(s) rho^c)^a] with its gradient in s."""
    a = float(alpha)
    c = (1.0 - a) / (2.0 * a)
    big_a = frac_power(rho.mat, c)

    def evaluate(s):
        m = (big_a * s) @ big_a
        w, v, on = _clamped_spectrum(m)
        val = float(np.sum(w[on] ** a))
        wp = np.zeros_like(w)
        wp[on] = w[on] ** (a - 1.0)
        p = (v * wp) @ v.conj().T
        grad = a * np.real(np.einsum("ij,jk,ki->i", big_a, p, big_a))
        return val, grad

    def evaluate_value(s):
        m = (big_a * s) @ big_a
        w, _, on = _clamped_spectrum(m)
        return float(np.sum(w[on] ** a))

    def evaluate_batch(pts):
        ms = (big_a[None, :, :] * pts[:, None, :]) @ big_a
        w = np.linalg.eigvalsh(ms)
        w = np.where(w < 0.0, 0.0, w)
        tau = SUPPORT_CUTOFF * np.maximum(w[:, -1:], 0.0)
        return np.sum(np.where(w > tau, w**a, 0.0), axis=1)

    return SimplexObjective(
        dim=rho.dim,
        evaluate=evaluate,
        sense=Sense.MAXIMIZE,
        evaluate_value=evaluate_value,
        evaluate_batch=evaluate_batch,
        warm_starts=(dephase(rho).probs,),
    )


def sigma_sandwich_objective(rho: DensityMatrix, alpha: float) -> SimplexObjective:
    """Q(s) = tr[(diag(s)^c rho diag(s)^c)^a] with its gradient in s.

    Sense follows the sign of a - 1: the outer expression
    ((Q)^{1/a} - 1)/(a - 1) is decreasing in Q for a < 1 and increasing for
    a > 1, so its minimum over sigma maximizes Q below 1 and minimizes it
    above. Iterates stay strictly interior, which enforces the a > 1
    support condition automatically.
    """
    a = float(alpha)
    c = (1.0 - a) / (2.0 * a)
    rho_m = rho.mat

    def evaluate(s):
        b = s**c
        m = rho_m * np.outer(b, b)
        w, v, on = _clamped_spectrum(m)
        val = float(np.sum(w[on] ** a))
        wp = np.zeros_like(w)
        wp[on] = w[on] ** (a - 1.0)
        p = (v * wp) @ v.conj().T
        inner = np.real(np.einsum("ij,j,ji->i", rho_m, b, p))
        grad = 2.0 * a * c * s ** (c - 1.0) * inner
        return val, grad

    def evaluate_value(s):
        b = s**c
        m = rho_m * np.outer(b, b)
        w, _, on = _clamped_spectrum(m)
        return float(np.sum(w[on] ** a))

    def evaluate_batch(pts):
        if a > 1.0:  # keep lattice boundary points finite for the oracle
            pts = np.maximum(pts, 1e-9)
            pts = pts / pts.sum(axis=1, keepdims=True)
        b = pts**c
        ms = rho_m[None, :, :] * (b[:, :, None] * b[:, None, :])
        w = np.linalg.eigvalsh(ms)
        w = np.where(w < 0.0, 0.0, w)
        tau = SUPPORT_CUTOFF * np.maximum(w[:, -1:], 0.0)
        return np.sum(np.where(w > tau, w**a, 0.0), axis=1)

    return SimplexObjective(
        dim=rho.dim,
        evaluate=evaluate,
        sense=Sense.MAXIMIZE if a < 1.0 else Sense.MINIMIZE,
        evaluate_value=evaluate_value,
        evaluate_batch=evaluate_batch,
        warm_starts=(dephase(rho).probs,),
    )


def _optimize(obj, cfg, seed, oracle):
    if oracle == "grid":
        return grid_search(obj, GRID_RESOLUTIONS.get(obj.dim, 1)), "grid-oracle"
    return mirror_ascend(obj, cfg, seed), "optimizer"


def c_s1(
    rho: DensityMatrix,
    alpha,
    cfg: OptimizerConfig = None,
    seed: int = 0,
    oracle: str = "mirror",
) -> MeasureResult:
    """Coherence measure 1 - max_sigma {tr[(rho^c sigma rho^c)^a]}^{1/(1-a)}.

    Valid for a in [1/2, 1). The outer power is monotone increasing, so
    maximizing the trace functional maximizes the whole bracket.
    """
    a = float(as_alpha(alpha, Regime.S1))
    obj = rho_sandwich_objective(rho, a)
    report, method = _optimize(obj, cfg, seed, oracle)
    value = 1.0 - report.best_value ** (1.0 / (1.0 - a))
    return MeasureResult(float(value), report.best_point, report, method)


def c_s(
    rho: DensityMatrix,
    alpha,
    cfg: OptimizerConfig = None,
    seed: int = 0,
    oracle: str = "mirror",
) -> MeasureResult:
    """Coherence measure min_sigma ({tr[(sigma^c rho sigma^c)^a]}^{1/a} - 1)/(a - 1).

    Valid for a in [1/2, 1) u (1, inf); for a > 1 the optimal sigma keeps
    supp(rho) inside its support (iterates are floored to the interior).
    At a = 1/2 exactly, the value is reported on the geometric-coherence
    normalization shared with c_s1 (the raw signed expression differs from
    it by a constant factor of 2 at that endpoint); the delegation is
    flagged in the method field.
    """
    a = float(as_alpha(alpha, Regime.S))
    if abs(2.0 * a - 1.0) < 1e-12:
        bridged = c_s1(rho, 0.5, cfg=cfg, seed=seed, oracle=oracle)
        return MeasureResult(
            bridged.value,
            bridged.optimal_sigma,
            bridged.report,
            bridged.method + "(half-order-bridge)",
        )
    obj = sigma_sandwich_objective(rho, a)
    report, method = _optimize(obj, cfg, seed, oracle)
    value = (report.best_value ** (1.0 / a) - 1.0) / (a - 1.0)
    return MeasureResult(float(value), report.best_point, report, method)


def c_s1_pure(psi: PureState, alpha) -> float:
    """Closed form 1 - max_j |<j|psi>|^{2a/(1-a)} for pure states."""
    a = float(as_alpha(alpha, Regime.S1))
    w = np.abs(psi.amplitudes) ** 2
    return float(1.0 - np.max(w) ** (a / (1.0 - a)))


def c_s_pure(psi: PureState, alpha) -> float:
    """Closed form [(sum_j |<psi|j>|^{2a/(2a-1)})^{(2a-1)/a} - 1]/(a - 1).

    At a = 1/2 the exponent diverges; the c_s1 closed form is returned
    there instead, matching the geometric-coherence normalization that
    c_s uses at the same endpoint.
    """
    a = float(as_alpha(alpha, Regime.S))
    if abs(2.0 * a - 1.0) < 1e-12:
        return c_s1_pure(psi, 0.5)
    w = np.abs(psi.amplitudes) ** 2
    total = float(np.sum(w ** (a / (2.0 * a - 1.0))))
    return float((total ** ((2.0 * a - 1.0) / a) - 1.0) / (a - 1.0))


def geometric_coherence(
    rho: DensityMatrix, cfg: OptimizerConfig = None, seed: int = 0, oracle: str = "mirror"
) -> MeasureResult:
    """1 minus the maximal squared fidelity to an incoherent state.

    Routed through c_s1 at a = 1/2, where the trace functional is exactly
    the fidelity to diag(sigma).
    """
    return c_s1(rho, 0.5, cfg=cfg, seed=seed, oracle=oracle)


def l1_coherence_qubit(rho: DensityMatrix) -> float:
    """Qubit l1-norm coherence: twice the off-diagonal modulus."""
    if rho.dim != 2:
        raise NotQubit(f"l1 helper is qubit-only, got dim {rho.dim}")
    return float(2.0 * abs(rho.mat[0, 1]))
