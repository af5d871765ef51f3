# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from driftrate import rates
from driftrate.errors import DomainError, RangeError, HypothesisError
from driftrate.rates import StandardConditions, DMConditions, GeometricBound

@pytest.fixture
def chain_conditions():
    return StandardConditions(a=1, eta=0.5, L=1.5, gamma=0.9, K=1, d=9.2)

@pytest.fixture
def flat_conditions():
    return StandardConditions(a=1, eta=0, L=0, gamma=0.5, K=1, d=3)

@pytest.fixture
def worked_dm():
    return DMConditions(eta_p=0.5, L_p=1.5, gamma_p=0.5, delta_p=1)

def random_dm_conditions(n, seed):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        eta = rng.uniform(0, 0.95)
        yield DMConditions(
            eta_p=eta,
            L_p=(1 - eta) + rng.uniform(0, 5),
            gamma_p=rng.uniform(0.05, 0.95),
            delta_p=rng.uniform(0.1, 5),
        )

class TestStandardConditions:

    def test_level_must_exceed_drift_threshold(self):
        with pytest.raises(DomainError):
            StandardConditions(a=1, eta=0.5, L=1.5, gamma=0.5, K=1, d=6)

    @pytest.mark.parametrize('field, value', [
        ('a', 0), ('eta', 1), ('L', -0.1), ('gamma', 1), ('K', -1),
    ])
    def test_invalid_parameters(self, field, value):
        params = dict(a=1, eta=0.5, L=1.5, gamma=0.5, K=1, d=9.2)
        params[field] = value
        with pytest.raises(DomainError):
            StandardConditions(**params)

    def test_lam(self, chain_conditions):
        assert chain_conditions.lam == pytest.approx(8.6 / 10.2)

class TestLambdaOfD:

    def test_chain_level(self):
        assert rates.lambda_of_d(0.5, 1.5, 9.2) == pytest.approx(0.843137, abs=1e-6)

    def test_zero_drift(self):
        assert rates.lambda_of_d(0, 0, 3) == 0.25

    def test_boundary_rejected(self):
        with pytest.raises(DomainError):
            rates.lambda_of_d(0.5, 1.5, 6)

    def test_strictly_decreasing(self):
        for eta, L in [(0, 0.5), (0.5, 1.5), (0.9, 3)]:
            ds = np.linspace(2 * L / (1 - eta) + 0.01, 100, 200)
            values = [rates.lambda_of_d(eta, L, d) for d in ds]
            assert np.all(np.diff(values) < 0)
            assert max(values) < 1

class TestCheckA3:

    def test_contracting_off_set(self, chain_conditions):
        assert rates.check_a3(chain_conditions)

    def test_large_expansion_fails(self):
        c = StandardConditions(a=1, eta=0.5, L=1.5, gamma=0.9, K=100, d=9.2)
        assert not rates.check_a3(c)

    def test_no_drift_offset(self):
        c = StandardConditions(a=1, eta=0, L=0, gamma=0.5, K=2, d=3)
        assert rates.check_a3(c)

class TestRInterval:

    def test_flat(self, flat_conditions):
        assert rates.r_interval_standard(flat_conditions) == (0.0, 1.0)

    def test_formula(self):
        c = StandardConditions(a=1, eta=0.5, L=1.5, gamma=0.971, K=1, d=9.2)
        lower, upper = rates.r_interval_standard(c)
        assert lower == pytest.approx(math.log(4) / (math.log(4) - math.log(0.971)))
        assert lower == pytest.approx(0.9792, abs=1e-4)
        assert upper == 1.0

    def test_expanding_upper_endpoint(self):
        c = StandardConditions(a=1, eta=0, L=0, gamma=0.5, K=2, d=3)
        lower, upper = rates.r_interval_standard(c)
        assert lower == 0.0
        assert upper == pytest.approx(math.log(4) / (math.log(2) + math.log(4)))

    def test_expansion_failure_raises(self):
        c = StandardConditions(a=1, eta=0.5, L=1.5, gamma=0.9, K=100, d=9.2)
        with pytest.raises(HypothesisError) as excinfo:
            rates.r_interval_standard(c)
        assert 'expansion condition' in str(excinfo.value)

    def test_collapses_as_gamma_grows(self):
        lowers = [
            rates.r_interval_standard(
                StandardConditions(a=1, eta=0.5, L=1.5, gamma=g, K=1, d=9.2))[0]
            for g in (0.5, 0.9, 0.99, 0.9999)
        ]
        assert np.all(np.diff(lowers) > 0)
        assert lowers[-1] > 0.999

class TestRhoRStandard:

    def test_flat(self, flat_conditions):
        bound = rates.rho_r_standard(flat_conditions, 0.5)
        assert bound.rho == pytest.approx(math.sqrt(0.5))
        assert bound.valid

    def test_coupling_set_branch(self):
        c = StandardConditions(a=1, eta=0, L=0, gamma=0.25, K=0.25, d=3)
        for r in (0.1, 0.5, 0.9):
            assert rates.rho_r_standard(c, r).rho == pytest.approx(0.25 ** r)

    def test_off_set_branch(self):
        c = StandardConditions(a=1, eta=0.5, L=1.5, gamma=0.1, K=1, d=9.2)
        bound = rates.rho_r_standard(c, 0.99)
        assert bound.rho == pytest.approx(c.lam ** 0.01)

    def test_r_out_of_range(self, flat_conditions):
        for r in (0, 1, -0.5, 1.5):
            with pytest.raises(RangeError):
                rates.rho_r_standard(flat_conditions, r)

    def test_below_one_inside_interval(self, chain_conditions):
        lower, upper = rates.r_interval_standard(chain_conditions)
        for r in np.linspace(lower, upper, 52)[1:-1]:
            bound = rates.rho_r_standard(chain_conditions, r)
            assert bound.rho < 1
            assert bound.valid

    def test_outside_interval_is_invalid(self, chain_conditions):
        lower, _ = rates.r_interval_standard(chain_conditions)
        bound = rates.rho_r_standard(chain_conditions, lower / 2)
        assert bound.rho > 1
        assert not bound.valid

    def test_continuous_in_r(self, chain_conditions):
        rs = np.linspace(0.01, 0.99, 981)
        values = np.array([rates.rho_r_standard(chain_conditions, r).rho for r in rs])
        assert np.max(np.abs(np.diff(values))) < 0.01

class TestPrefactor:

    def test_chain(self):
        c = StandardConditions(a=1, eta=0.5, L=1.5, gamma=0.5, K=1, d=9.2)
        bound = rates.prefactor_standard(c, 9, 0.976)
        assert bound.prefactor == pytest.approx(16 / 0.024)
        assert bound.rho == 0.976

    def test_degenerate(self):
        c = StandardConditions(a=1, eta=0, L=0, gamma=0.5, K=1, d=3)
        assert rates.prefactor_standard(c, 0, 0).prefactor == 1

    def test_scaled_metric(self):
        c = StandardConditions(a=2, eta=0.5, L=1.5, gamma=0.5, K=1, d=9.2)
        assert rates.prefactor_standard(c, 0, 0.5).prefactor == pytest.approx(10)

    def test_rate_must_be_below_one(self, chain_conditions):
        with pytest.raises(RangeError):
            rates.prefactor_standard(chain_conditions, 1, 1.0)

class TestGeometricBound:

    def test_at(self):
        bound = GeometricBound(10, 0.5)
        assert bound.at(0) == 10
        assert bound.at(3) == pytest.approx(1.25)

    def test_offset(self):
        bound = GeometricBound(10, 0.5, n_offset=2)
        assert bound.at(1) == 10
        assert bound.at(3) == pytest.approx(5)

    def test_invalid(self):
        with pytest.raises(RangeError):
            GeometricBound(1, 1.0)
        with pytest.raises(DomainError):
            GeometricBound(-1, 0.5)

class TestContinuousBound:

    def test_floor(self):
        discrete = GeometricBound(10, 0.5)
        assert rates.continuous_bound(discrete, 1, 1, 2.5) == pytest.approx(2.5)

    def test_time_zero(self):
        discrete = GeometricBound(10, 0.5)
        assert rates.continuous_bound(discrete, 3, 0.7, 0) == pytest.approx(30)

    def test_no_short_time_expansion(self):
        assert rates.continuous_bound(GeometricBound(10, 0.5), 0, 1, 4) == 0

    def test_nonincreasing(self):
        discrete = GeometricBound(4, 0.8)
        values = [rates.continuous_bound(discrete, 2, 0.3, t) for t in np.linspace(0, 10, 101)]
        assert np.all(np.diff(values) <= 0)

    def test_invalid_sampling_time(self):
        with pytest.raises(DomainError):
            rates.continuous_bound(GeometricBound(1, 0.5), 1, 0, 1)

class TestDurmusMoulines:

    def test_worked_rate(self, worked_dm):
        assert worked_dm.lam == pytest.approx(0.875)
        assert worked_dm.J == pytest.approx(8 + 24 / 7.)
        bound = rates.rho_dm(worked_dm)
        assert bound.rho == pytest.approx(0.97086, abs=1e-4)
        assert 0 < bound.r < 1
        assert worked_dm.lam ** (1 - bound.r) == pytest.approx(bound.rho)

    def test_translation(self, worked_dm):
        c = rates.dm_translate(worked_dm)
        assert c.L == pytest.approx(1.25)
        assert c.d == pytest.approx(7)
        assert c.lam == pytest.approx(0.875)
        assert (c.a, c.eta, c.gamma, c.K) == (1, 0.5, 0.5, 1)

    def test_worked_improvement(self, worked_dm):
        improved = rates.dm_improved_rate(worked_dm)
        assert improved.r == pytest.approx(2 / 3.)
        assert improved.rho == pytest.approx(0.875 ** (1 / 3.))
        assert improved.rho == pytest.approx(0.95647, abs=1e-4)
        assert improved.valid
        lower, upper = rates.r_interval_standard(rates.dm_translate(worked_dm))
        assert lower < improved.r < upper

    def test_rate_tends_to_one(self):
        rhos = [
            rates.rho_dm(DMConditions(eta_p=0.5, L_p=1.5, gamma_p=g, delta_p=1)).rho
            for g in (0.5, 0.9, 0.999, 0.999999)
        ]
        assert np.all(np.diff(rhos) > 0)
        assert 1 - rhos[-1] < 1e-6

    def test_drift_offset_precondition(self):
        with pytest.raises(DomainError):
            DMConditions(eta_p=0.5, L_p=0.4, gamma_p=0.5, delta_p=1)

    def test_strict_improvement_on_random_draws(self):
        for c in random_dm_conditions(200, seed=7):
            assert rates.dm_improved_rate(c).rho < rates.rho_dm(c).rho
