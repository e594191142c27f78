"""Optimization of objectives over the probability simplex.

Mirror ascent (exponentiated gradient) with backtracking is the workhorse;
an exhaustive lattice search at small dimension serves as the independent
oracle. The closed-form two-block Hoelder aggregation used by the
block-additivity proof lives here too.
"""

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    AlphaOutOfRange,
    DimensionTooLarge,
    InvalidWeights,
    NonFiniteObjective,
    NonPositiveEntry,
    NonPositiveT,
)
from .states import ProbVector


class Sense(enum.Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


@dataclass
class SimplexObjective:
    """Differentiable objective over the dim-simplex.

    `evaluate` returns (value, gradient). `evaluate_value` is an optional
    cheaper value-only path used during line search; `evaluate_batch` maps
    an (n, dim) array of simplex points to n values and lets the lattice
    oracle vectorize. `warm_starts` are extra restart points (e.g. the
    dephased input state).
    """

    dim: int
    evaluate: Callable[[np.ndarray], tuple]
    sense: Sense = Sense.MAXIMIZE
    evaluate_value: Optional[Callable[[np.ndarray], float]] = None
    evaluate_batch: Optional[Callable[[np.ndarray], np.ndarray]] = None
    warm_starts: Sequence[np.ndarray] = field(default_factory=tuple)

    def value(self, s: np.ndarray) -> float:
        if self.evaluate_value is not None:
            return self.evaluate_value(s)
        return self.evaluate(s)[0]


@dataclass
class OptimizerConfig:
    max_iters: int = 400
    tol: float = 1e-9  # sup-norm of the simplex-projected gradient
    restarts: int = 4
    interior_floor: float = 1e-9
    step_rule: str = "backtracking"

    def __post_init__(self):
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not 0.0 < self.interior_floor < 1.0:
            raise ValueError("interior_floor must lie in (0, 1)")


@dataclass
class OptimizationReport:
    best_value: float
    best_point: ProbVector
    iterations: int
    converged: bool
    restarts_agreeing: int


AGREEMENT_TOL = 1e-7


def _projected_gradient_norm(s, g_eff, floor):
    """KKT residual: interior coords share the multiplier, boundary ones
    must not want to grow."""
    mu = float(s @ g_eff)
    interior = s > 10.0 * floor
    pg = 0.0
    if np.any(interior):
        pg = float(np.max(np.abs(g_eff[interior] - mu)))
    if np.any(~interior):
        pg = max(pg, float(np.max(np.maximum(g_eff[~interior] - mu, 0.0))))
    return pg


def _floor_and_normalize(s, floor):
    s = np.maximum(s, floor)
    return s / s.sum()

def _check_finite(val, grad=None):
    if not np.isfinite(val) or (grad is not None and not np.all(np.isfinite(grad))):
        raise NonFiniteObjective("objective returned NaN or infinity")


def _ascend_one(obj: SimplexObjective, start, cfg: OptimizerConfig):
    """One mirror-ascent run; returns (value, point, iterations, converged)."""
    sign = 1.0 if obj.sense is Sense.MAXIMIZE else -1.0
    floor = cfg.interior_floor
    s = _floor_and_normalize(np.asarray(start, dtype=float), floor)
    val, grad = obj.evaluate(s)
    _check_finite(val, grad)
    f = sign * val
    eta = 1.0
    converged = False
    stalls = 0
    it = 0
    for it in range(1, cfg.max_iters + 1):
        g_eff = sign * grad
        pg = _projected_gradient_norm(s, g_eff, floor)
        if pg < cfg.tol:
            converged = True
            break
        accepted = False
        while eta > 1e-14:
            expo = np.maximum(eta * (g_eff - g_eff.max()), -700.0)
            s_new = _floor_and_normalize(s * np.exp(expo), floor)
            f_new = sign * obj.value(s_new)
            _check_finite(f_new)
            if f_new >= f:
                accepted = True
                break
            if cfg.step_rule == "fixed":
                break
            eta *= 0.5
        if not accepted:
            converged = pg < max(cfg.tol, 1e-6)
            break
        if f_new - f <= 1e-16 * (1.0 + abs(f)):
            stalls += 1
            if stalls >= 10:
                converged = pg < max(cfg.tol, 1e-6)
                break
        else:
            stalls = 0
        s = s_new
        f = f_new
        val, grad = obj.evaluate(s)
        _check_finite(val, grad)
        f = sign * val
        eta = min(eta * 1.5, 1e6)
    return sign * f, s, it, converged


def mirror_ascend(
    obj: SimplexObjective, cfg: OptimizerConfig = None, seed: int = 0
) -> OptimizationReport:
    """Multi-start exponentiated-gradient optimization over the simplex.

    Restarts begin at the uniform point, any warm starts supplied by the
    objective, then random Dirichlet draws. Runs are merged by value and
    then lexicographic point order, so the result is deterministic per seed.
    """
    if cfg is None:
        cfg = OptimizerConfig()
    d = obj.dim
    rng = np.random.default_rng(seed)
    starts = [np.full(d, 1.0 / d)]
    starts.extend(np.asarray(w, dtype=float) for w in obj.warm_starts)
    n_starts = max(cfg.restarts, len(starts))
    while len(starts) < n_starts:
        starts.append(rng.dirichlet(np.ones(d)))
    starts = starts[:n_starts]
    sign = 1.0 if obj.sense is Sense.MAXIMIZE else -1.0
    runs = [_ascend_one(obj, s0, cfg) for s0 in starts]
    runs.sort(key=lambda r: (-sign * r[0], tuple(r[1])))
    best_val, best_pt, iters, converged = runs[0]
    agreeing = sum(1 for r in runs if abs(r[0] - best_val) <= AGREEMENT_TOL)
    return OptimizationReport(
        best_value=float(best_val),
        best_point=ProbVector(best_pt),
        iterations=iters,
        converged=converged,
        restarts_agreeing=agreeing,
    )


def _lattice_points(dim: int, resolution: int) -> np.ndarray:
    """All simplex lattice points k/resolution in lexicographic order."""
    if dim == 1:
        return np.ones((1, 1))
    combos = itertools.combinations_with_replacement(range(resolution + 1), dim - 1)
    # stars-and-bars: cut points -> counts
    pts = []
    for cuts in combos:
        prev = 0
        row = []
        for c in cuts:
            row.append(c - prev)
            prev = c
        row.append(resolution - prev)
        pts.append(row)
    return np.asarray(pts, dtype=float) / resolution


def grid_search(obj: SimplexObjective, resolution: int) -> OptimizationReport:
    """Exhaustive lattice evaluation; the brute-force oracle.

    Ties break toward the first lattice point in lexicographic order.
    """
    if obj.dim > 4:
        raise DimensionTooLarge(f"grid search capped at dim 4, got {obj.dim}")
    pts = _lattice_points(obj.dim, resolution)
    if obj.evaluate_batch is not None:
        vals = np.asarray(obj.evaluate_batch(pts), dtype=float)
    else:
        vals = np.array([obj.value(p) for p in pts])
    idx = int(np.argmax(vals)) if obj.sense is Sense.MAXIMIZE else int(np.argmin(vals))
    return OptimizationReport(
        best_value=float(vals[idx]),
        best_point=ProbVector(pts[idx]),
        iterations=pts.shape[0],
        converged=True,
        restarts_agreeing=1,
    )


def holder_two_block(t1: float, t2: float, p1: float, p2: float, alpha) -> float:
    """Closed-form max over (q1, q2) of p1^{1-a} q1^a t1 + p2^{1-a} q2^a t2.

    This is the aggregation step that turns per-block optima into the
    block-diagonal optimum for the 1 - max(...) family, valid for
    alpha in [1/2, 1) and t1, t2 > 0.
    """
    a = float(alpha)
    if not 0.5 <= a < 1.0:
        raise AlphaOutOfRange(f"alpha={a} outside [1/2, 1)")
    if t1 <= 0.0 or t2 <= 0.0:
        raise NonPositiveT(f"t values must be positive, got ({t1}, {t2})")
    if p1 <= 0.0 or p2 <= 0.0 or abs(p1 + p2 - 1.0) > 1e-10:
        raise InvalidWeights(f"weights ({p1}, {p2}) invalid")
    e = 1.0 / (a - 1.0)
    inner = t1**e / p1 + t2**e / p2
    return float(p1 ** (1.0 - a) * p2 ** (1.0 - a) * t1 * t2 * inner ** (1.0 - a))


@dataclass(frozen=True)
class HolderCheck:
    lhs: float
    rhs: float
    regime_satisfied: bool
    equality: bool


def holder_check(a_vec, b_vec, alpha: float) -> HolderCheck:
    """Evaluate both sides of the Hoelder inequality for positive vectors.

    The form checked is sum a_j b_j <= (sum a_j^{1/alpha})^alpha *
    (sum b_j^{1/(1-alpha)})^{1-alpha} for alpha in (0,1), with the
    inequality reversed for alpha > 1. Equality holds exactly when the
    componentwise ratios a_j^{1/alpha} / b_j^{1/(1-alpha)} all agree.
    """
    a = np.asarray(a_vec, dtype=float)
    b = np.asarray(b_vec, dtype=float)
    if np.any(a <= 0.0) or np.any(b <= 0.0):
        raise NonPositiveEntry("holder_check requires strictly positive entries")
    al = float(alpha)
    if al in (0.0, 1.0):
        raise AlphaOutOfRange("alpha must differ from 0 and 1")
    lhs = float(np.sum(a * b))
    rhs = float(np.sum(a ** (1.0 / al)) ** al * np.sum(b ** (1.0 / (1.0 - al))) ** (1.0 - al))
    satisfied = lhs <= rhs + 1e-12 if 0.0 < al < 1.0 else lhs >= rhs - 1e-12
    ratios = a ** (1.0 / al) / b ** (1.0 / (1.0 - al))
    proportional = float(np.max(ratios) - np.min(ratios)) <= 1e-10 * float(np.max(ratios))
    equality = abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs)) and proportional
    return HolderCheck(lhs=lhs, rhs=rhs, regime_satisfied=satisfied, equality=equality)
