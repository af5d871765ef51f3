# -*- coding: utf-8 -*-
from driftrate.errors import (
    DriftRateError, DomainError, RangeError, HypothesisError, NonFiniteError, VerificationError,
)
from driftrate.rates import (
    StandardConditions, DMConditions, RateBound, GeometricBound,
    lambda_of_d, check_a3, r_interval_standard, rho_r_standard, prefactor_standard,
    continuous_bound, rho_dm, dm_translate, dm_improved_rate,
)
from driftrate.generalized import (
    CompactDomain, ScalarField2, GeneralizedSpec, SupremumResult,
    sup_field, sup_generalized, rho_r_generalized, r_interval_generalized,
    optimize_r, prefactor_generalized, coupling_set_summary,
)

__version__ = '0.1.0'
__all__ = [
    'DriftRateError',
    'DomainError',
    'RangeError',
    'HypothesisError',
    'NonFiniteError',
    'VerificationError',
    'StandardConditions',
    'DMConditions',
    'RateBound',
    'GeometricBound',
    'lambda_of_d',
    'check_a3',
    'r_interval_standard',
    'rho_r_standard',
    'prefactor_standard',
    'continuous_bound',
    'rho_dm',
    'dm_translate',
    'dm_improved_rate',
    'CompactDomain',
    'ScalarField2',
    'GeneralizedSpec',
    'SupremumResult',
    'sup_field',
    'sup_generalized',
    'rho_r_generalized',
    'r_interval_generalized',
    'optimize_r',
    'prefactor_generalized',
    'coupling_set_summary',
]
