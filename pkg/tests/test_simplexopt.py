import numpy as np
import pytest

from sandcoh.errors import (
    AlphaOutOfRange,
    DimensionTooLarge,
    InvalidWeights,
    NonFiniteObjective,
    NonPositiveEntry,
    NonPositiveT,
)
from sandcoh.measures import rho_sandwich_objective, sigma_sandwich_objective
from sandcoh.simplexopt import (
    OptimizerConfig,
    Sense,
    SimplexObjective,
    grid_search,
    holder_check,
    holder_two_block,
    mirror_ascend,
)
from sandcoh.states import maximally_coherent, random_density


def linear_objective(c, sense=Sense.MAXIMIZE):
    c = np.asarray(c, dtype=float)
    return SimplexObjective(
        dim=len(c),
        evaluate=lambda s: (float(c @ s), c.copy()),
        sense=sense,
        evaluate_batch=lambda pts: pts @ c,
    )


class TestMirrorAscend:
    def test_linear_vertex(self):
        rep = mirror_ascend(linear_objective([0.2, 0.8]), OptimizerConfig(), seed=0)
        assert rep.best_value == pytest.approx(0.8, abs=1e-6)
        assert rep.best_point.probs[1] > 1.0 - 1e-6

    def test_quadratic_barycenter(self):
        obj = SimplexObjective(
            dim=3,
            evaluate=lambda s: (float(s @ s), 2.0 * s),
            sense=Sense.MINIMIZE,
        )
        rep = mirror_ascend(obj, OptimizerConfig(), seed=0)
        assert rep.best_value == pytest.approx(1.0 / 3.0, abs=1e-8)
        assert np.allclose(rep.best_point.probs, 1.0 / 3.0, atol=1e-5)

    def test_plus_state_sandwich(self):
        plus = maximally_coherent(2).to_density()
        rep = mirror_ascend(rho_sandwich_objective(plus, 0.5), OptimizerConfig(), 0)
        assert rep.best_value == pytest.approx(0.5**0.5, abs=1e-8)

    def test_non_finite_objective(self):
        obj = SimplexObjective(
            dim=2, evaluate=lambda s: (float("nan"), np.zeros(2)), sense=Sense.MAXIMIZE
        )
        with pytest.raises(NonFiniteObjective):
            mirror_ascend(obj, OptimizerConfig(), 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_restart_agreement_on_s1_objectives(self, seed):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 4))
        rho = random_density(d, d, seed + 300)
        alpha = float(rng.choice([0.5, 0.6, 0.75, 0.9]))
        rep = mirror_ascend(
            rho_sandwich_objective(rho, alpha), OptimizerConfig(restarts=8), seed
        )
        assert rep.restarts_agreeing == 8


class TestGridSearch:
    def test_linear_vertex_exact(self):
        rep = grid_search(linear_objective([0.2, 0.8]), 10)
        assert rep.best_value == pytest.approx(0.8)
        assert np.array_equal(rep.best_point.probs, [0.0, 1.0])

    def test_constant_objective(self):
        obj = SimplexObjective(dim=2, evaluate=lambda s: (3.0, np.zeros(2)))
        rep = grid_search(obj, 10)
        assert rep.best_value == 3.0
        # lexicographic tie break: first lattice point wins
        assert np.array_equal(rep.best_point.probs, [0.0, 1.0])

    def test_plus_state_value(self):
        plus = maximally_coherent(2).to_density()
        rep = grid_search(rho_sandwich_objective(plus, 0.5), 10**4)
        assert rep.best_value == pytest.approx(0.5**0.5, abs=1e-4)

    def test_dimension_guard(self):
        obj = SimplexObjective(dim=5, evaluate=lambda s: (0.0, np.zeros(5)))
        with pytest.raises(DimensionTooLarge):
            grid_search(obj, 10)


class TestMirrorMatchesGrid:
    @pytest.mark.parametrize("family", ["s1", "s"])
    @pytest.mark.parametrize("d,res", [(2, 10**4), (3, 200)])
    def test_agreement(self, family, d, res):
        alphas = (0.5, 0.75) if family == "s1" else (0.75, 2.0)
        for seed in range(5):
            rho = random_density(d, d, seed + 40)
            for alpha in alphas:
                build = rho_sandwich_objective if family == "s1" else sigma_sandwich_objective
                obj = build(rho, alpha)
                rm = mirror_ascend(obj, OptimizerConfig(restarts=8), seed)
                rg = grid_search(obj, res)
                # the lattice cannot beat a feasible evaluation: one-sided bound
                if obj.sense is Sense.MAXIMIZE:
                    assert rm.best_value >= rg.best_value - 1e-4
                else:
                    assert rm.best_value <= rg.best_value + 1e-4
                assert abs(rm.best_value - rg.best_value) <= 1e-3


class TestGradients:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_finite_differences(self, d):
        rng = np.random.default_rng(d)
        for seed in range(5):
            rho = random_density(d, d, seed + 70)
            s = rng.dirichlet(np.ones(d)) * 0.8 + 0.2 / d
            s /= s.sum()
            for alpha, build in [
                (0.6, rho_sandwich_objective),
                (0.9, rho_sandwich_objective),
                (0.75, sigma_sandwich_objective),
                (2.0, sigma_sandwich_objective),
            ]:
                obj = build(rho, alpha)
                _, grad = obj.evaluate(s)
                h = 1e-6
                for j in range(d):
                    e = np.zeros(d)
                    e[j] = h
                    fd = (obj.value(s + e) - obj.value(s - e)) / (2 * h)
                    assert abs(grad[j] - fd) <= 1e-5


class TestHolderTwoBlock:
    def oracle(self, t1, t2, p1, p2, alpha, res=10**5):
        q1 = np.linspace(0.0, 1.0, res + 1)
        vals = p1 ** (1 - alpha) * q1**alpha * t1 + p2 ** (1 - alpha) * (1 - q1) ** alpha * t2
        return float(np.max(vals))

    def test_symmetric_unit(self):
        assert holder_two_block(1.0, 1.0, 0.5, 0.5, 0.5) == pytest.approx(1.0, abs=1e-6)

    def test_unit_t_any_weights(self):
        assert holder_two_block(1.0, 1.0, 0.3, 0.7, 0.75) == pytest.approx(1.0, abs=1e-6)

    def test_against_grid_oracle(self):
        t1 = 0.9**0.5
        val = holder_two_block(t1, 1.0, 0.5, 0.5, 0.5)
        assert val == pytest.approx(self.oracle(t1, 1.0, 0.5, 0.5, 0.5), abs=1e-6)

    def test_swap_symmetry(self):
        a = holder_two_block(0.4, 0.9, 0.3, 0.7, 0.6)
        b = holder_two_block(0.9, 0.4, 0.7, 0.3, 0.6)
        assert a == pytest.approx(b, rel=1e-12)

    def test_errors(self):
        with pytest.raises(NonPositiveT):
            holder_two_block(0.0, 1.0, 0.5, 0.5, 0.5)
        with pytest.raises(InvalidWeights):
            holder_two_block(1.0, 1.0, 0.5, 0.6, 0.5)
        with pytest.raises(AlphaOutOfRange):
            holder_two_block(1.0, 1.0, 0.5, 0.5, 2.0)


class TestHolderCheck:
    def test_proportional_equality(self):
        res = holder_check([1.0, 1.0], [1.0, 1.0], 0.5)
        assert res.lhs == pytest.approx(2.0)
        assert res.rhs == pytest.approx(2.0)
        assert res.regime_satisfied and res.equality

    def test_strict_below_one(self):
        res = holder_check([1.0, 2.0], [2.0, 1.0], 0.5)
        assert res.lhs == pytest.approx(4.0)
        assert res.lhs < res.rhs
        assert res.regime_satisfied and not res.equality

    def test_reversed_above_one(self):
        res = holder_check([1.0, 2.0], [2.0, 1.0], 2.0)
        assert res.lhs >= res.rhs
        assert res.regime_satisfied

    def test_rejects_nonpositive(self):
        with pytest.raises(NonPositiveEntry):
            holder_check([1.0, 0.0], [1.0, 1.0], 0.5)
