# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from driftrate import generalized, rates
from driftrate.errors import DomainError, HypothesisError, NonFiniteError, RangeError
from driftrate.generalized import (
    CompactDomain, GeneralizedSpec, PowerProduct, ScalarField2, lattice, sup_field,
)

def constant(value):
    return ScalarField2(lambda x, y: value, 'constant {}'.format(value))

def quadratic_spec(Gamma, Lambda):
    return GeneralizedSpec(
        a=1,
        V=lambda x: np.asarray(x, dtype=float) ** 2,
        PV=lambda x: np.asarray(x, dtype=float) ** 2 / 2 + 1,
        Gamma=Gamma,
        Lambda=Lambda,
        domain=CompactDomain.box((-1, 1), (-1, 1)),
    )

def as_points(grid):
    return set(zip(np.round(grid.x, 9), np.round(grid.y, 9)))

class TestCompactDomain:

    def test_equality(self):
        assert CompactDomain.box((0, 1), (0, 2)) == CompactDomain.box((0., 1.), (0., 2.))
        assert CompactDomain.box((0, 1), (0, 2)) != CompactDomain.disk((0, 0), 1)
        assert CompactDomain.disk((0, 0), 1) != 7

    def test_hashable(self):
        domains = {CompactDomain.disk((0, 0), 1), CompactDomain.disk((0., 0.), 1.)}
        assert len(domains) == 1

    @pytest.mark.parametrize('kind, bounds', [
        ('box', ((1, 0), (0, 1))),
        ('disk', ((0, 0), 0)),
        ('ring', ((0, 0), 1)),
    ])
    def test_invalid(self, kind, bounds):
        with pytest.raises(DomainError):
            CompactDomain(kind, bounds)

    def test_contains(self):
        disk = CompactDomain.disk((1, 1), 1)
        assert disk.contains(1, 2)
        assert not disk.contains(2, 2)
        assert disk.bounding_box() == ((0, 2), (0, 2))

    def test_sample(self):
        disk = CompactDomain.disk((0, 0), 2)
        points = disk.sample(500, seed=3)
        assert points.shape == (500, 2)
        assert np.all(disk.contains(points[:, 0], points[:, 1]))
        np.testing.assert_array_equal(points, disk.sample(500, seed=3))
        assert not np.array_equal(points, disk.sample(500, seed=4))

class TestLattice:

    def test_box_size(self):
        grid = lattice(CompactDomain.box((0, 1), (0, 1)), 0.25)
        assert len(grid) == 25
        assert (grid.x[0], grid.y[0]) == (0, 0)
        assert (grid.x[-1], grid.y[-1]) == (1, 1)

    def test_disk_is_centered(self):
        grid = lattice(CompactDomain.disk((0, 0), 1), 0.5)
        assert (0, 0) in as_points(grid)
        assert len(grid) == 13

    @pytest.mark.parametrize('domain', [
        CompactDomain.box((-1, 1), (-2, 0.5)),
        CompactDomain.disk((0.5, 0), 1.3),
    ])
    def test_nested(self, domain):
        coarse, fine = lattice(domain, 0.1), lattice(domain, 0.05)
        assert as_points(coarse) <= as_points(fine)

    def test_step_must_be_positive(self):
        with pytest.raises(DomainError):
            lattice(CompactDomain.box((0, 1), (0, 1)), 0)

class TestFields:

    def test_broadcast_constant(self):
        values = constant(0.5)(np.zeros(3), np.ones(3))
        np.testing.assert_array_equal(values, [0.5, 0.5, 0.5])

    def test_power_product_on_grid(self, loose_spec):
        grid = lattice(loose_spec.domain, 0.5)
        field = PowerProduct(loose_spec.Gamma, loose_spec.Lambda, 0.3)
        np.testing.assert_allclose(field.on_grid(grid), field(grid.x, grid.y), rtol=1e-12)

    def test_power_product_endpoints(self, loose_spec):
        grid = lattice(loose_spec.domain, 0.5)
        np.testing.assert_array_equal(
            PowerProduct(loose_spec.Gamma, loose_spec.Lambda, 0).on_grid(grid),
            loose_spec.Lambda.on_grid(grid))
        np.testing.assert_array_equal(
            PowerProduct(loose_spec.Gamma, loose_spec.Lambda, 1).on_grid(grid),
            loose_spec.Gamma.on_grid(grid))

    def test_grid_cache_is_capped(self):
        field = ScalarField2(lambda x, y: 1 + x ** 2 + y ** 2)
        domain = CompactDomain.box((-1, 1), (-1, 1))
        for k in range(1, 20):
            grid = lattice(domain, 1.0 / k)
            np.testing.assert_allclose(
                field.log_on_grid(grid), np.log(1 + grid.x ** 2 + grid.y ** 2), rtol=1e-12)
            assert len(field._grid_cache) <= generalized.GRID_CACHE_SIZE

class TestSupField:

    def test_smooth_maximum(self):
        field = ScalarField2(lambda x, y: -(x - 0.3) ** 2 - (y + 0.2) ** 2)
        result = sup_field(field, CompactDomain.box((-1, 1), (-1, 1)), 0.1, 4)
        assert result.value == pytest.approx(0, abs=1e-12)
        assert result.argmax == pytest.approx((0.3, -0.2), abs=1e-9)
        assert result.grid_step == pytest.approx(0.1 / 16)
        assert result.evaluations > 441

    def test_ties_go_to_smallest_point(self):
        result = sup_field(constant(1.0), CompactDomain.box((0, 1), (0, 1)), 0.1, 3)
        assert result.value == 1
        assert result.argmax == (0, 0)

    def test_refinement_never_decreases(self, loose_spec):
        field = PowerProduct(loose_spec.Gamma, loose_spec.Lambda, 0.5)
        values = [sup_field(field, loose_spec.domain, 0.2, levels).value for levels in range(4)]
        assert np.all(np.diff(values) >= 0)

    def test_non_finite(self):
        field = ScalarField2(lambda x, y: np.where(x > 0.5, np.nan, 0.0))
        with pytest.raises(NonFiniteError):
            sup_field(field, CompactDomain.box((0, 1), (0, 1)), 0.1, 0)

    def test_negative_levels(self):
        with pytest.raises(DomainError):
            sup_field(constant(1.0), CompactDomain.box((0, 1), (0, 1)), 0.1, -1)

    @pytest.mark.parametrize('name, step', [('loose', 0.1), ('tight', 0.2)])
    @pytest.mark.parametrize('r', [0.2, 0.395, 0.6])
    def test_matches_dense_lattice(self, name, step, r, loose_spec, tight_spec):
        spec = loose_spec if name == 'loose' else tight_spec
        field = PowerProduct(spec.Gamma, spec.Lambda, r)
        refined = sup_field(field, spec.domain, step, 1)
        dense = lattice(spec.domain, step / 2)
        assert refined.value == pytest.approx(np.max(field(dense.x, dense.y)), abs=1e-6)

class TestGeneralizedRate:

    def test_r_interval_of_constant_fields(self):
        spec = quadratic_spec(constant(0.5), constant(2.0))
        lower, upper = generalized.r_interval_generalized(spec, 0.25)
        assert lower == pytest.approx(0.5)
        assert upper == 1.0
        assert generalized.rho_r_generalized(spec, 0.6, 0.25, 0).valid
        assert not generalized.rho_r_generalized(spec, 0.4, 0.25, 0).valid

    def test_r_interval_requires_contraction(self):
        spec = quadratic_spec(constant(1.2), constant(1.5))
        with pytest.raises(HypothesisError):
            generalized.r_interval_generalized(spec, 0.25)

    def test_r_out_of_range(self, loose_spec):
        with pytest.raises(RangeError):
            generalized.sup_generalized(loose_spec, 1.0)

    def test_interval_brackets_rates_below_one(self, loose_spec):
        lower, upper = generalized.r_interval_generalized(loose_spec)
        for r in np.linspace(lower, upper, 7)[1:-1]:
            assert generalized.rho_r_generalized(loose_spec, r).rho < 1

    def test_never_worse_than_standard(self, loose_spec):
        rs = np.arange(1, 100) / 100.
        general = [generalized.rho_r_generalized(loose_spec, r).rho for r in rs]
        for d in (7.0, 9.2, 12.0):
            conditions = generalized.coupling_set_summary(loose_spec, d, 0.5, 1.5)
            standard = [rates.rho_r_standard(conditions, r).rho for r in rs]
            assert np.all(np.array(general) <= np.array(standard) + 1e-9)

class TestOptimizeR:

    def test_interior_minimum(self):
        r, value = generalized.optimize_r(lambda r: (r - 0.3) ** 2 + 1, 0, 1)
        assert r == pytest.approx(0.3, abs=1e-6)
        assert value == pytest.approx(1)

    def test_boundary_minimum(self):
        r, value = generalized.optimize_r(lambda r: r, 0, 1)
        assert r == pytest.approx(0, abs=1e-6)
        assert value == pytest.approx(0, abs=1e-6)

    def test_invalid_bounds(self):
        with pytest.raises(RangeError):
            generalized.optimize_r(lambda r: r, 0.5, 0.5)
        with pytest.raises(DomainError):
            generalized.optimize_r(lambda r: r, 0, 1, grid_points=2)

class TestInterior:

    def test_unit_interval(self):
        lo, hi = generalized.interior(0, 1)
        assert (lo, hi) == pytest.approx((1e-3, 1 - 1e-3))

    def test_narrow_interval_near_one(self):
        c = rates.StandardConditions(a=1, eta=0.5, L=1.5, gamma=0.9999, K=1, d=9.2)
        lower, upper = rates.r_interval_standard(c)
        assert lower > 0.999
        lo, hi = generalized.interior(lower, upper)
        assert lower < lo < hi < upper
        r, rho = generalized.optimize_r(lambda s: rates.rho_r_standard(c, s).rho, lo, hi)
        assert rates.rho_r_standard(c, r).valid
        assert rho < 1

    def test_empty(self):
        with pytest.raises(RangeError):
            generalized.interior(0.5, 0.5)

class TestPrefactor:

    def test_tight_start(self, tight_spec):
        bound = generalized.prefactor_generalized(tight_spec, 3.0, 0.577)
        g3 = 1.5 - math.sin(3) / 2
        assert bound.prefactor == pytest.approx((g3 ** 2 + 1 + 9 + 1) / 0.423)
        assert bound.prefactor == pytest.approx(30.835, abs=1e-3)

    def test_origin(self, tight_spec):
        bound = generalized.prefactor_generalized(tight_spec, 0.0, 0.5)
        assert bound.prefactor == pytest.approx(4)

    def test_rate_must_be_below_one(self, tight_spec):
        with pytest.raises(RangeError):
            generalized.prefactor_generalized(tight_spec, 0.0, 1.0)

class TestSpecCheck:

    def test_autoregression_specs(self, loose_spec, tight_spec):
        assert loose_spec.check()
        assert tight_spec.check(n=200, seed=5)

    def test_lambda_below_drift_ratio(self, tight_spec):
        spec = GeneralizedSpec(
            a=1, V=tight_spec.V, PV=tight_spec.PV, Gamma=tight_spec.Gamma,
            Lambda=constant(0.1), domain=tight_spec.domain)
        with pytest.raises(HypothesisError):
            spec.check(n=100)

    def test_negative_field(self):
        spec = quadratic_spec(constant(-0.5), constant(10.0))
        with pytest.raises(HypothesisError):
            spec.check(n=10)

    def test_metric_link_must_be_positive(self):
        with pytest.raises(DomainError):
            GeneralizedSpec(0, None, None, None, None, None)

class TestCouplingSetSummary:

    def test_matches_coupling_set_sup(self, loose_spec):
        from driftrate import nar
        conditions = generalized.coupling_set_summary(loose_spec, 9.2, 0.5, 1.5)
        assert conditions.gamma == pytest.approx(nar.gamma_sup_on_coupling_set(9.2), abs=1e-3)
        assert 0.99 < conditions.K <= 1
        assert (conditions.eta, conditions.L, conditions.d) == (0.5, 1.5, 9.2)

    def test_given_expansion_factor(self, loose_spec):
        conditions = generalized.coupling_set_summary(loose_spec, 9.2, 0.5, 1.5, K=1.0)
        assert conditions.K == 1.0

class TestGridValues:

    def test_rows(self, loose_spec):
        field = PowerProduct(loose_spec.Gamma, loose_spec.Lambda, 0.4)
        x, y, values = generalized.grid_values(field, loose_spec.domain, 0.5)
        assert x.shape == y.shape == values.shape
        assert np.all(loose_spec.domain.contains(x, y))
        assert values.max() <= generalized.sup_generalized(loose_spec, 0.4).value + 1e-12
