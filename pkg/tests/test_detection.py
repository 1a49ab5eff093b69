"""Detector models: POVMs, conditioning, and lossy moment statistics."""

import math

import numpy as np
import pytest

from wsim import (
    DensityOperator,
    DetectorModel,
    FockSpace,
    PureState,
    condition,
    fock_state,
    lossy_moments,
    lossy_moments_ancilla,
    povm_moments,
    povm_number,
    povm_onoff,
    reduced_pair,
    symmetric_angles,
    w_state_from_coefficients,
)
from wsim.circuits import coefficients_from_angles


def random_two_mode_state(rng):
    space = FockSpace(2)
    v = rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim)
    v /= np.linalg.norm(v)
    return DensityOperator(space, np.outer(v, v.conj()), normalized=True)


class TestPovmElements:
    def test_detector_efficiency_range(self):
        with pytest.raises(ValueError):
            DetectorModel(1.5)
        with pytest.raises(ValueError):
            DetectorModel(-0.1)

    def test_number_element_single_count(self):
        eta = 0.7
        elem = povm_number(1, DetectorModel(eta))
        assert elem.entries == pytest.approx((0.0, eta, 2.0 * eta * (1.0 - eta)))

    def test_onoff_click_element(self):
        eta = 0.7
        elem = povm_onoff(True, DetectorModel(eta))
        assert elem.entries == pytest.approx((0.0, eta, 1.0 - (1.0 - eta) ** 2))

    def test_count_beyond_cutoff_rejected(self):
        with pytest.raises(ValueError):
            povm_number(3, DetectorModel(0.5))
        with pytest.raises(ValueError):
            povm_number(-1, DetectorModel(0.5))

    @pytest.mark.parametrize("eta", [0.0, 0.3, 1.0])
    def test_number_elements_complete(self, eta):
        det = DetectorModel(eta)
        total = np.zeros(3)
        for k in range(3):
            total += np.array(povm_number(k, det).entries)
        assert total == pytest.approx(np.ones(3))

    @pytest.mark.parametrize("eta", [0.0, 0.3, 1.0])
    def test_onoff_elements_complete(self, eta):
        det = DetectorModel(eta)
        total = np.array(povm_onoff(False, det).entries) + np.array(
            povm_onoff(True, det).entries
        )
        assert total == pytest.approx(np.ones(3))

    def test_onoff_excess_over_single_count(self):
        # the click element absorbs the two-photon weight that a
        # number-resolving single count rejects
        det = DetectorModel(0.6)
        on = np.array(povm_onoff(True, det).entries)
        one = np.array(povm_number(1, det).entries)
        assert on[1] == pytest.approx(one[1])
        assert on[2] - one[2] == pytest.approx(0.6**2)


class TestCondition:
    def test_vacuum_conditioning_heralds_pair(self):
        eta = 0.4
        w = w_state_from_coefficients(coefficients_from_angles(symmetric_angles(3)))
        out = condition(w.to_density(), {2: povm_number(0, DetectorModel(eta))})
        space = out.space
        psi = np.zeros(space.dim, dtype=complex)
        psi[space.index[(1, 0)]] = 1.0 / math.sqrt(2.0)
        psi[space.index[(0, 1)]] = 1.0 / math.sqrt(2.0)
        expected = (2.0 / 3.0) * np.outer(psi, psi.conj())
        vac = space.index[(0, 0)]
        expected[vac, vac] += (1.0 - eta) / 3.0
        assert np.allclose(out.matrix, expected, atol=1e-12)
        assert out.trace() == pytest.approx((3.0 - eta) / 3.0)

    def test_single_count_probability_is_efficiency(self):
        eta = 0.35
        out = condition(
            fock_state(FockSpace(1), (1,)).to_density(),
            {0: povm_number(1, DetectorModel(eta))},
        )
        assert out.space.num_modes == 0
        assert out.trace() == pytest.approx(eta)

    def test_empty_assignment_rejected(self):
        rho = fock_state(FockSpace(1), (1,)).to_density()
        with pytest.raises(ValueError):
            condition(rho, {})

    def test_out_of_range_mode_rejected(self):
        rho = fock_state(FockSpace(1), (1,)).to_density()
        with pytest.raises(ValueError):
            condition(rho, {1: povm_number(0, DetectorModel(0.5))})

    def test_povm_cutoff_must_cover_state(self):
        rho = fock_state(FockSpace(1), (2,)).to_density()
        short = povm_number(0, DetectorModel(0.5), cutoff=1)
        with pytest.raises(ValueError):
            condition(rho, {0: short})

    def test_outcome_probabilities_sum_to_one(self):
        rng = np.random.default_rng(3)
        rho = random_two_mode_state(rng)
        det = DetectorModel(0.6)
        total = 0.0
        for kc in range(3):
            for kd in range(3):
                out = condition(
                    rho, {0: povm_number(kc, det), 1: povm_number(kd, det)}
                )
                total += out.trace()
        assert total == pytest.approx(1.0, abs=1e-12)


class TestLossyMoments:
    def test_unit_efficiency_matches_ideal(self):
        rng = np.random.default_rng(5)
        rho = random_two_mode_state(rng)
        ideal = lossy_moments(rho, DetectorModel(1.0))
        anc = lossy_moments_ancilla(rho, DetectorModel(1.0))
        assert ideal == pytest.approx(anc, abs=1e-12)

    def test_zero_efficiency_sees_nothing(self):
        rng = np.random.default_rng(6)
        rho = random_two_mode_state(rng)
        var_jx, var_jy, n_plus = lossy_moments(rho, DetectorModel(0.0))
        assert var_jx == pytest.approx(0.0, abs=1e-14)
        assert var_jy == pytest.approx(0.0, abs=1e-14)
        assert n_plus == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("seed", range(10))
    def test_transform_equals_ancilla_model(self, seed):
        rng = np.random.default_rng(seed)
        rho = random_two_mode_state(rng)
        det = DetectorModel(float(rng.uniform(0.0, 1.0)))
        a = lossy_moments(rho, det)
        b = lossy_moments_ancilla(rho, det)
        assert a == pytest.approx(b, abs=1e-10)

    @pytest.mark.parametrize("seed", range(6))
    def test_povm_backends_agree_on_pair_states(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 6))
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        v /= np.linalg.norm(v)
        i, j = sorted(rng.choice(n, size=2, replace=False))
        rho2 = reduced_pair(tuple(complex(x) for x in v), int(i), int(j))
        det = DetectorModel(float(rng.uniform(0.05, 1.0)))
        number = povm_moments(rho2, det, kind="number")
        onoff = povm_moments(rho2, det, kind="onoff")
        transform = lossy_moments(rho2, det)
        assert number == pytest.approx(onoff, abs=1e-12)
        assert number == pytest.approx(transform, abs=1e-12)

    def test_unknown_backend_rejected(self):
        rho = fock_state(FockSpace(2), (1, 0)).to_density()
        with pytest.raises(ValueError):
            povm_moments(rho, DetectorModel(0.5), kind="analog")

    def test_two_modes_required(self):
        rho = fock_state(FockSpace(1), (1,)).to_density()
        with pytest.raises(ValueError):
            lossy_moments(rho, DetectorModel(0.5))
