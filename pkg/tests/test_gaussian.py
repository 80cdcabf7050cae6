import math

import numpy as np
import pytest

from conftest import conditional_oracle, random_physical_cov, symplectic_form

from epr_optomech.errors import DomainError
from epr_optomech.gaussian import (
    GaussianState,
    beam_splitter,
    entanglement_swap,
    epr_pair,
    epr_report,
    homodyne_condition,
    is_physical,
    log_negativity_two_mode,
    purity,
    squeeze,
    symplectic_eigenvalues,
    tensor,
    vacuum,
)

R10 = math.log(10) / 2  # 10 dB of squeezing

# regression constants from the independent conditioning oracle
SWAP_EN_10DB = 1.6193882432872724
SWAP_REID_10DB = 0.00980296049406914


def random_state(rng, n_modes=2) -> GaussianState:
    cov = random_physical_cov(rng, n_modes)
    mean = rng.normal(0.0, 1.0, size=2 * n_modes)
    return GaussianState(n_modes, mean, cov)


class TestVacuum:
    def test_single_mode(self):
        state = vacuum(1)
        np.testing.assert_array_equal(state.cov, np.eye(2) / 2)
        np.testing.assert_array_equal(state.mean, np.zeros(2))

    def test_two_modes(self):
        np.testing.assert_array_equal(vacuum(2).cov, np.eye(4) / 2)

    def test_symplectic_spectrum_is_half(self):
        nus = symplectic_eigenvalues(vacuum(3).cov)
        np.testing.assert_allclose(nus, 0.5, rtol=1e-12)

    def test_rejects_zero_modes(self):
        with pytest.raises(DomainError):
            vacuum(0)


class TestSqueeze:
    def test_ten_db_variances(self):
        # e^{-2r}/2 and e^{+2r}/2: the product must stay at the pure-state 1/4
        state = squeeze(vacuum(1), 0, R10, angle=0.0)
        np.testing.assert_allclose(np.diag(state.cov), [0.05, 5.0], rtol=1e-14)
        assert abs(state.cov[0, 1]) < 1e-16
        assert np.linalg.det(state.cov) == pytest.approx(0.25, rel=1e-12)

    def test_zero_r_is_identity(self):
        state = squeeze(vacuum(1), 0, 0.0, angle=0.3)
        np.testing.assert_allclose(state.cov, np.eye(2) / 2, atol=1e-16)

    def test_quarter_turn_swaps_quadratures(self):
        x_sq = squeeze(vacuum(1), 0, 0.7, angle=0.0)
        p_sq = squeeze(vacuum(1), 0, 0.7, angle=np.pi / 2)
        np.testing.assert_allclose(np.diag(p_sq.cov), np.diag(x_sq.cov)[::-1], rtol=1e-12)

    def test_mode_out_of_range(self):
        with pytest.raises(DomainError):
            squeeze(vacuum(1), 1, 0.5)

    def test_preserves_purity(self):
        state = squeeze(vacuum(2), 1, 1.3, angle=0.4)
        assert purity(state) == pytest.approx(1.0, rel=1e-12)


class TestBeamSplitter:
    def test_balanced_mix_of_orthogonal_squeezers(self):
        state = squeeze(squeeze(vacuum(2), 0, R10, angle=np.pi / 2), 1, R10, angle=0.0)
        out = beam_splitter(state, 0, 1, 0.5)
        expected = (math.exp(2 * R10) + math.exp(-2 * R10)) / 4  # 2.525 at 10 dB
        for idx in range(4):
            assert out.cov[idx, idx] == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(2.525, rel=1e-12)

    def test_full_transmissivity_is_identity(self, rng=np.random.default_rng(3)):
        state = random_state(rng)
        out = beam_splitter(state, 0, 1, 1.0)
        np.testing.assert_allclose(out.cov, state.cov, atol=1e-15)
        np.testing.assert_allclose(out.mean, state.mean, atol=1e-15)

    def test_conjugate_application_returns_input(self):
        rng = np.random.default_rng(4)
        state = random_state(rng)
        # swapping the mode arguments applies the inverse transform
        back = beam_splitter(beam_splitter(state, 0, 1, 0.5), 1, 0, 0.5)
        np.testing.assert_allclose(back.cov, state.cov, atol=1e-14)
        np.testing.assert_allclose(back.mean, state.mean, atol=1e-14)

    def test_rejects_same_mode(self):
        with pytest.raises(DomainError):
            beam_splitter(vacuum(2), 0, 0, 0.5)

    def test_rejects_bad_transmissivity(self):
        with pytest.raises(DomainError):
            beam_splitter(vacuum(2), 0, 1, 1.2)


class TestHomodyneCondition:
    def test_epr_conditional_variance(self):
        state = epr_pair(R10, R10)
        conditioned = homodyne_condition(state, 1, quadrature_angle=0.0)
        # Schur complement of the measured x quadrature: 1/(2 cosh 2r) = 1/10.1
        assert conditioned.cov[0, 0] == pytest.approx(1 / 10.1, rel=1e-12)

    def test_product_state_unaffected(self):
        state = squeeze(squeeze(vacuum(2), 0, 0.9, angle=0.2), 1, 0.4, angle=1.0)
        marginal_before = state.cov[:2, :2].copy()
        conditioned = homodyne_condition(state, 1)
        np.testing.assert_array_equal(conditioned.cov, marginal_before)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            state = random_state(rng)
            angle = rng.uniform(0, 2 * np.pi)
            outcome = rng.normal()
            got = homodyne_condition(state, 1, angle, outcome)
            want_mean, want_cov = conditional_oracle(state.mean, state.cov, 1, angle, outcome)
            np.testing.assert_allclose(got.cov, want_cov, atol=1e-12)
            np.testing.assert_allclose(got.mean, want_mean, atol=1e-12)

    def test_preserves_physicality(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            state = random_state(rng, n_modes=3)
            conditioned = homodyne_condition(state, rng.integers(0, 3), rng.uniform(0, np.pi))
            assert is_physical(conditioned, tol=1e-9)

    def test_never_increases_remaining_diagonal(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            state = random_state(rng)
            conditioned = homodyne_condition(state, 1, rng.uniform(0, np.pi))
            before = np.diag(state.cov)[:2]
            after = np.diag(conditioned.cov)
            assert np.all(after <= before + 1e-12)

    def test_degenerate_variance_uses_pseudo_inverse(self):
        # measured quadrature variance exactly zero must not divide by zero
        cov = np.diag([1.0, 1.0, 0.0, 2.0])
        state = GaussianState(2, np.zeros(4), cov)
        conditioned = homodyne_condition(state, 1, quadrature_angle=0.0)
        np.testing.assert_array_equal(conditioned.cov, np.diag([1.0, 1.0]))

    def test_single_mode_rejected(self):
        with pytest.raises(DomainError):
            homodyne_condition(vacuum(1), 0)


class TestEprPair:
    def test_no_squeezing_gives_two_mode_vacuum(self):
        state = epr_pair(0.0, 0.0)
        np.testing.assert_allclose(state.cov, np.eye(4) / 2, atol=1e-15)
        report = epr_report(state, 0, 1)
        assert report.reid_product == pytest.approx(0.25, abs=1e-12)
        assert not report.epr_certified

    @pytest.mark.parametrize("r", [0.0, 0.25, R10, 2.0])
    def test_reid_product_and_log_negativity(self, r):
        report = epr_report(epr_pair(r, r), 0, 1)
        assert report.reid_product == pytest.approx(math.exp(-4 * r) / 4, rel=1e-9, abs=1e-12)
        assert report.log_negativity == pytest.approx(2 * r, abs=1e-9)

    @pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0])
    def test_collective_epr_variances(self, r):
        cov = epr_pair(r, r).cov
        v_x_sum = cov[0, 0] + cov[2, 2] + 2 * cov[0, 2]
        v_p_diff = cov[1, 1] + cov[3, 3] - 2 * cov[1, 3]
        assert v_x_sum == pytest.approx(math.exp(-2 * r), rel=1e-12)
        assert v_p_diff == pytest.approx(math.exp(-2 * r), rel=1e-12)

    def test_correlation_signs(self):
        # EPR-operator convention: x_A + x_B and p_A - p_B are the squeezed
        # collective quadratures, so x readings anti-correlate and p readings
        # correlate across the pair.
        cov = epr_pair(1.0, 1.0).cov
        assert cov[0, 2] < 0
        assert cov[1, 3] > 0

    def test_epr_variance_shrinks_monotonically(self):
        values = []
        for r in np.linspace(0.0, 3.0, 13):
            cov = epr_pair(r, r).cov
            values.append(cov[0, 0] + cov[2, 2] + 2 * cov[0, 2])
        diffs = np.diff(values)
        assert np.all(diffs < 0)
        assert values[-1] > 0

    def test_asymmetric_pair_is_physical(self):
        state = epr_pair(0.3, 1.7)
        assert is_physical(state)
        assert purity(state) == pytest.approx(1.0, rel=1e-10)

    def test_rejects_negative_r(self):
        with pytest.raises(DomainError):
            epr_pair(-0.1, 0.0)


class TestEprReport:
    def test_ten_db_pair(self):
        report = epr_report(epr_pair(R10, R10), 0, 1)
        assert report.reid_product == pytest.approx(0.0025, rel=1e-12)
        assert report.epr_certified
        assert report.log_negativity == pytest.approx(math.log(10), abs=1e-12)
        assert report.cond_var_x == pytest.approx(0.05, rel=1e-12)
        assert report.cond_var_p == pytest.approx(0.05, rel=1e-12)

    def test_product_is_product_of_variances(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            report = epr_report(random_state(rng), 0, 1)
            assert report.reid_product == pytest.approx(
                report.cond_var_x * report.cond_var_p, rel=1e-12
            )
            assert report.log_negativity >= 0.0

    def test_lossy_pair_keeps_some_entanglement(self):
        state = tensor(epr_pair(R10, R10), vacuum(1))
        lossy = beam_splitter(state, 1, 2, 0.5)
        report = epr_report(lossy, 0, 1)
        assert 0.0 < report.log_negativity < math.log(10)

    def test_certification_implies_negativity(self):
        rng = np.random.default_rng(22)
        hits = 0
        for _ in range(300):
            state = random_state(rng)
            report = epr_report(state, 0, 1)
            if report.epr_certified:
                hits += 1
                assert report.log_negativity > 0.0
        assert hits > 0  # the sample must actually exercise certification

    def test_separable_states_never_certify(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            # product of random single-mode states: manifestly separable
            cov = np.zeros((4, 4))
            cov[:2, :2] = random_physical_cov(rng, 1)
            cov[2:, 2:] = random_physical_cov(rng, 1)
            report = epr_report(GaussianState(2, np.zeros(4), cov), 0, 1)
            assert report.reid_product >= 0.25 - 1e-10
            assert not report.epr_certified or report.reid_product < 0.25

    def test_distinct_modes_required(self):
        with pytest.raises(DomainError):
            epr_report(vacuum(2), 1, 1)


class TestSymplecticMachinery:
    def test_heisenberg_on_random_states(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            cov = random_physical_cov(rng, 2)
            for mode in range(2):
                vx = cov[2 * mode, 2 * mode]
                vp = cov[2 * mode + 1, 2 * mode + 1]
                assert vx * vp >= 0.25 - 1e-12

    def test_transforms_preserve_symplectic_spectrum(self):
        rng = np.random.default_rng(32)
        state = random_state(rng)
        before = symplectic_eigenvalues(state.cov)
        after = symplectic_eigenvalues(
            beam_splitter(squeeze(state, 0, 0.8, 0.3), 0, 1, 0.3).cov
        )
        np.testing.assert_allclose(after, before, rtol=1e-10)

    def test_pure_state_determinant(self):
        state = beam_splitter(squeeze(vacuum(2), 0, 1.1, 0.2), 0, 1, 0.4)
        assert np.linalg.det(state.cov) == pytest.approx(0.25**2, rel=1e-12)
        three = squeeze(vacuum(3), 2, 0.9, 1.0)
        assert np.linalg.det(three.cov) == pytest.approx(0.25**3, rel=1e-12)

    def test_log_negativity_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            log_negativity_two_mode(np.eye(2))


class TestEntanglementSwap:
    def test_no_squeezing_swaps_nothing(self):
        report = entanglement_swap(0.0, 0.0)
        assert report.log_negativity == 0.0
        assert not report.epr_certified

    def test_ten_db_regression(self):
        report = entanglement_swap(R10, R10)
        assert report.log_negativity == pytest.approx(SWAP_EN_10DB, rel=1e-9)
        assert report.reid_product == pytest.approx(SWAP_REID_10DB, rel=1e-9)
        assert report.epr_certified

    def test_swap_never_beats_input_pairs(self):
        for r in (0.25, 0.5, 1.0, 2.0):
            swapped = entanglement_swap(r, r)
            assert swapped.log_negativity <= 2 * r + 1e-12
            assert swapped.log_negativity > 0.0

    def test_monotone_in_input_squeezing(self):
        values = [entanglement_swap(r, r).log_negativity for r in (0.2, 0.5, 1.0, 1.5)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_asymmetric_inputs_bounded_by_weaker_pair(self):
        swapped = entanglement_swap(0.4, 1.6)
        assert swapped.log_negativity <= 2 * 0.4 + 1e-12
