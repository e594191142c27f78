import numpy as np
import pytest

from sandcoh.errors import AlphaOutOfRange, NotQubit
from sandcoh.measures import (
    c_s,
    c_s1,
    c_s1_pure,
    c_s_pure,
    geometric_coherence,
    l1_coherence_qubit,
)
from sandcoh.states import (
    DensityMatrix,
    PureState,
    maximally_coherent,
    random_density,
    random_pure,
)

PLUS = maximally_coherent(2)


class TestCS1:
    def test_incoherent_input(self):
        rho = DensityMatrix(np.diag([0.3, 0.7]).astype(complex))
        assert abs(c_s1(rho, 0.6).value) <= 1e-8

    def test_plus_state(self):
        res = c_s1(PLUS.to_density(), 0.5)
        assert res.value == pytest.approx(0.5, abs=1e-7)

    def test_skewed_pure_state(self):
        psi = PureState(np.array([np.sqrt(0.8), np.sqrt(0.2)]))
        assert c_s1(psi.to_density(), 0.5).value == pytest.approx(0.2, abs=1e-7)
        assert c_s1(psi.to_density(), 0.5, oracle="grid").value == pytest.approx(
            0.2, abs=1e-4
        )

    def test_alpha_range(self):
        with pytest.raises(AlphaOutOfRange):
            c_s1(PLUS.to_density(), 1.2)

    @pytest.mark.parametrize("seed", range(10))
    def test_value_bounds(self, seed):
        rho = random_density(3, 2, seed)
        v = c_s1(rho, 0.75).value
        assert -1e-9 <= v <= 1.0 + 1e-9


class TestCS1Pure:
    def test_basis_vector(self):
        e0 = PureState(np.array([1.0, 0.0]))
        assert c_s1_pure(e0, 0.7) == 0.0

    def test_maximally_coherent_two(self):
        assert c_s1_pure(maximally_coherent(2), 0.5) == pytest.approx(0.5)

    def test_maximally_coherent_three(self):
        assert c_s1_pure(maximally_coherent(3), 0.75) == pytest.approx(26.0 / 27.0)

    @pytest.mark.parametrize("d", [2, 3, 4])
    @pytest.mark.parametrize("alpha", [0.5, 0.6, 0.75, 0.9])
    def test_matches_optimizer(self, d, alpha):
        for seed in range(5):
            psi = random_pure(d, seed + 100 * d)
            assert abs(c_s1(psi.to_density(), alpha).value - c_s1_pure(psi, alpha)) <= 1e-6


class TestCS:
    def test_incoherent_input(self):
        rho = DensityMatrix(np.diag([0.3, 0.7]).astype(complex))
        assert abs(c_s(rho, 2.0).value) <= 1e-8

    def test_plus_state_alpha_two(self):
        res = c_s(PLUS.to_density(), 2.0)
        assert res.value == pytest.approx(np.sqrt(2) - 1.0, abs=1e-7)
        grid = c_s(PLUS.to_density(), 2.0, oracle="grid")
        assert grid.value == pytest.approx(np.sqrt(2) - 1.0, abs=1e-4)

    def test_half_order_coincides_with_c_s1(self):
        rho = PLUS.to_density()
        assert abs(c_s(rho, 0.5).value - c_s1(rho, 0.5).value) <= 1e-6

    def test_nonnegative(self):
        for seed in range(10):
            rho = random_density(3, 3, seed)
            assert c_s(rho, 1.5).value >= -1e-9


class TestCSPure:
    def test_basis_vector(self):
        e1 = PureState(np.array([0.0, 1.0]))
        for alpha in (0.6, 2.0, 3.0):
            assert abs(c_s_pure(e1, alpha)) <= 1e-12

    def test_maximally_coherent_two(self):
        assert c_s_pure(maximally_coherent(2), 2.0) == pytest.approx(np.sqrt(2) - 1.0)

    def test_half_order_branch(self):
        psi = random_pure(3, 9)
        assert c_s_pure(psi, 0.5) == pytest.approx(c_s1_pure(psi, 0.5), abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3, 4])
    @pytest.mark.parametrize("alpha", [0.6, 0.75, 1.5, 2.0, 3.0])
    def test_matches_optimizer(self, d, alpha):
        for seed in range(5):
            psi = random_pure(d, seed + 100 * d)
            assert abs(c_s(psi.to_density(), alpha).value - c_s_pure(psi, alpha)) <= 1e-6


def test_families_not_equivalent_at_equal_order():
    # concrete witness: the two closed forms differ at the same order
    psi = PureState(np.array([np.sqrt(0.8), np.sqrt(0.2)]))
    assert abs(c_s1_pure(psi, 0.75) - c_s_pure(psi, 0.75)) > 1e-3


class TestGeometricCoherence:
    def test_incoherent(self):
        rho = DensityMatrix(np.diag([0.4, 0.6]).astype(complex))
        assert abs(geometric_coherence(rho).value) <= 1e-8

    def test_plus_state(self):
        assert geometric_coherence(PLUS.to_density()).value == pytest.approx(0.5, abs=1e-7)

    def test_skewed_pure_state(self):
        psi = PureState(np.array([np.sqrt(0.8), np.sqrt(0.2)]))
        assert geometric_coherence(psi.to_density()).value == pytest.approx(0.2, abs=1e-7)


class TestL1Qubit:
    def test_diagonal(self):
        rho = DensityMatrix(np.diag([0.4, 0.6]).astype(complex))
        assert l1_coherence_qubit(rho) == 0.0

    def test_plus_state(self):
        assert l1_coherence_qubit(PLUS.to_density()) == pytest.approx(1.0)

    def test_phase_invariant(self):
        for theta in (0.0, 0.9, 2.4):
            off = 0.3 * np.exp(1j * theta)
            rho = DensityMatrix(np.array([[0.5, off], [off.conjugate(), 0.5]]))
            assert l1_coherence_qubit(rho) == pytest.approx(0.6)

    def test_rejects_non_qubit(self):
        with pytest.raises(NotQubit):
            l1_coherence_qubit(random_density(3, 3, 0))


class TestFaithfulness:
    @pytest.mark.parametrize("d", [2, 3])
    def test_zero_on_diagonal_positive_on_coherent(self, d):
        rng = np.random.default_rng(d)
        for seed in range(10):
            diag = DensityMatrix(np.diag(rng.dirichlet(np.ones(d))).astype(complex))
            assert abs(c_s1(diag, 0.75).value) <= 1e-7
            assert abs(c_s(diag, 2.0).value) <= 1e-7
            psi = random_pure(d, seed + 800)
            if np.min(np.abs(psi.amplitudes)) > 0.1:
                assert c_s1(psi.to_density(), 0.75).value >= 1e-4
                assert c_s(psi.to_density(), 2.0).value >= 1e-4


class TestPermutationInvariance:
    @pytest.mark.parametrize("seed", range(10))
    def test_basis_permutation(self, seed):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 4))
        rho = random_density(d, d, seed + 900)
        perm = rng.permutation(d)
        permuted = DensityMatrix(rho.mat[np.ix_(perm, perm)])
        assert abs(c_s1(rho, 0.75).value - c_s1(permuted, 0.75).value) <= 1e-8
        assert abs(c_s(rho, 2.0).value - c_s(permuted, 2.0).value) <= 1e-8
