# -*- coding: utf-8 -*-
"""The perturbed autoregressive chain ``X' = g(X) + Z`` with
``g(x) = x/2 - sin(x)/2`` and standard normal noise: its contraction and drift
fields, compact search domains, and standard-condition summary.
"""

import collections
import functools
import logging
import math

import numpy as np
from scipy import optimize

from driftrate.errors import DomainError
from driftrate.generalized import (
    CompactDomain, GeneralizedSpec, ScalarField2, sup_field, optimize_r,
)
from driftrate.rates import StandardConditions, rho_r_standard

logger = logging.getLogger(__name__)

TWO_PI_SQ = 2 * math.pi ** 2
# coupling-set levels must exceed 2L / (1 - eta) for the drift below
D_MIN = 6.0
DRIFT_A, DRIFT_ETA, DRIFT_L = 1.0, 0.5, 1.5
TIGHT_HALF_WIDTH = 26.0
DIAGONAL_TOL = 1e-8
R_LO, R_HI = 1e-3, 1 - 1e-3
# fifty levels strictly inside (D_MIN, 2 pi^2)
DEFAULT_D_STEP = (TWO_PI_SQ - D_MIN) / 51


def _unwrap(values):
    return float(values) if np.ndim(values) == 0 else values


def g_eval(x):
    """``g(x) = x/2 - sin(x)/2``, componentwise."""
    x = np.asarray(x, dtype=float)
    return _unwrap(0.5 * x - 0.5 * np.sin(x))


def gamma_nar(x, y):
    """Contraction field ``|g(x) - g(y)| / |x - y|``, with ``|g'(x)|`` on the
    diagonal. Values lie in [0, 1].
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    delta = x - y
    # (sin x - sin y) / (x - y) = cos((x + y) / 2) * sin(delta / 2) / (delta / 2)
    quotient = np.cos(0.5 * (x + y)) * np.sinc(delta / (2 * np.pi))
    quotient = np.where(np.abs(delta) < DIAGONAL_TOL, np.cos(x), quotient)
    return _unwrap(0.5 * (1.0 - quotient))


def lambda_loose(x, y, c=1.0):
    """Drift ratio built from the loosened bound ``PV(x) <= x^2/2 + 3/2``
    for ``V(x) = x^2 / c``.
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    sq = x ** 2 + y ** 2
    return _unwrap((sq / (2 * c) + 3.0 / c + 1) / (sq / c + 1))


def lambda_tight(x, y, c=1.0):
    """Exact drift ratio ``(PV(x) + PV(y) + 1) / (V(x) + V(y) + 1)`` for
    ``V(x) = x^2 / c``.
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    gx, gy = g_eval(x), g_eval(y)
    return _unwrap((gx ** 2 + gy ** 2 + 2 + c) / (x ** 2 + y ** 2 + c))


GAMMA = ScalarField2(gamma_nar, 'Gamma of the perturbed autoregression')

FIELD_CHOICES = ('loose', 'tight')


def domain_for(field_choice):
    """Compact region containing the maximizers of ``Gamma^r Lambda^(1-r)``
    for every r in (0, 1).
    """
    if field_choice == 'loose':
        return CompactDomain.disk(
            (0.0, 0.0), math.sqrt(TWO_PI_SQ),
            justification=(
                'off the disk x^2 + y^2 <= 2 pi^2, Gamma equals Gamma at a diagonal '
                'point in [-pi, pi] where the loose Lambda is larger'))
    if field_choice == 'tight':
        return CompactDomain.box(
            (-TIGHT_HALF_WIDTH, TIGHT_HALF_WIDTH), (-TIGHT_HALF_WIDTH, TIGHT_HALF_WIDTH),
            justification=(
                'off the box |x|, |y| <= 26 the tight Lambda is below 0.284, while '
                'a diagonal witness with the same Gamma has Lambda above 0.284'))
    raise DomainError('field choice must be one of {}, got {!r}'.format(
        FIELD_CHOICES, field_choice))


def gamma_sup_on_coupling_set(d, grid_step=None, levels=None):
    """``sup Gamma`` over the coupling set ``x^2 + y^2 < d``.

    Equals one once the set reaches ``(pi, pi)``, i.e. for ``d = 2 pi^2``.
    """
    if not D_MIN < d <= TWO_PI_SQ:
        raise DomainError('d must lie in ({}, 2 pi^2], got {}'.format(D_MIN, d))
    if d == TWO_PI_SQ:
        return 1.0
    domain = CompactDomain.disk((0.0, 0.0), math.sqrt(d), justification='coupling set')
    return sup_field(GAMMA, domain, grid_step, levels).value


def standard_conditions_nar(d, grid_step=None, levels=None):
    """Standard conditions with ``a = 1, eta = 1/2, L = 3/2, K = 1``.

    :rtype: StandardConditions
    """
    if not D_MIN < d < TWO_PI_SQ:
        raise DomainError('d must lie in ({}, 2 pi^2), got {}'.format(D_MIN, d))
    gamma = gamma_sup_on_coupling_set(d, grid_step, levels)
    return StandardConditions(a=DRIFT_A, eta=DRIFT_ETA, L=DRIFT_L, gamma=gamma, K=1.0, d=d)


StandardOptimum = collections.namedtuple('StandardOptimum', ['r', 'd', 'bound', 'conditions'])


def optimize_standard_nar(d_points=40, r_points=None, grid_step=None, levels=None):
    """Minimize the standard rate jointly over the exponent and the
    coupling-set level.

    :rtype: StandardOptimum
    """
    if d_points < 3:
        raise DomainError('d_points must be at least 3, got {}'.format(d_points))

    def best_for(d):
        conditions = standard_conditions_nar(d, grid_step, levels)
        return optimize_r(lambda r: rho_r_standard(conditions, r).rho, R_LO, R_HI, r_points)

    ds = np.linspace(D_MIN, TWO_PI_SQ, d_points + 2)[1:-1]
    rates = [best_for(d)[1] for d in ds]
    i = int(np.argmin(rates))
    bounds = (ds[max(i - 1, 0)], ds[min(i + 1, len(ds) - 1)])
    result = optimize.minimize_scalar(
        lambda d: best_for(d)[1], bounds=bounds, method='bounded', options={'xatol': 1e-4})
    d = float(result.x) if result.fun < rates[i] else float(ds[i])
    r, _ = best_for(d)
    conditions = standard_conditions_nar(d, grid_step, levels)
    bound = rho_r_standard(conditions, r)
    logger.info('standard optimum rho=%.6f at r=%.6f d=%.6f', bound.rho, r, d)
    return StandardOptimum(r, d, bound, conditions)


class NARModel(object):
    """Autoregression ``X' = g(X) + Z`` with ``Z`` iid normal with covariance
    ``noise_std**2`` times the identity, and drift function
    ``V(x) = |x|^2 / (c_tune * dim)``.

    :param callable g: state map, applied to arrays of states
    :param int dim: state dimension
    :param float c_tune: drift scaling, at least ``1 / (2 dim)``
    :param callable slope: (optional) difference quotient
        ``(g(x) - g(y)) / (x - y)`` for one-dimensional states, used to
        propagate the gap of a coupled pair without cancellation
    """

    def __init__(self, g, dim=1, c_tune=1.0, slope=None, noise_std=1.0, name=''):
        if dim < 1:
            raise DomainError('dim must be positive, got {}'.format(dim))
        if c_tune < 1.0 / (2 * dim):
            raise DomainError('c_tune must be at least 1/(2 dim) = {}, got {}'.format(
                1.0 / (2 * dim), c_tune))
        if dim > 1 and slope is not None:
            raise DomainError('slope is only defined for one-dimensional states')
        self.g = g
        self.dim = dim
        self.c_tune = float(c_tune)
        self.slope = slope
        self.noise_std = float(noise_std)
        self.name = name

    def __repr__(self):
        return '<NARModel {} dim={} c={}>'.format(self.name or self.g, self.dim, self.c_tune)

    def sq_norm(self, x):
        x = np.asarray(x, dtype=float)
        return x ** 2 if self.dim == 1 else np.sum(x ** 2, axis=-1)

    @property
    def metric_a(self):
        return self.c_tune * self.dim

    def drift_v(self, x):
        return self.sq_norm(x) / self.metric_a

    def drift_pv(self, x):
        return (self.sq_norm(self.g(x)) + self.dim * self.noise_std ** 2) / self.metric_a


def nar_model(c_tune=1.0, dim=1):
    return NARModel(
        g_eval, dim=dim, c_tune=c_tune,
        slope=gamma_nar if dim == 1 else None,
        name='perturbed autoregression',
    )


def linear_model(coef=0.5):
    """Pure AR(1) chain ``X' = coef X + Z``."""
    return NARModel(
        lambda x: coef * np.asarray(x, dtype=float),
        slope=lambda x, y: coef + np.zeros(np.broadcast(x, y).shape),
        name='AR(1) coef={}'.format(coef),
    )


@functools.lru_cache(maxsize=8)
def nar_spec(field_choice, c_tune=1.0):
    """Generalized drift and contraction data of the one-dimensional chain.

    :param str field_choice: ``'loose'`` (drift ratio from the loosened drift
        bound) or ``'tight'`` (exact drift ratio)
    :rtype: GeneralizedSpec
    """
    domain = domain_for(field_choice)
    model = nar_model(c_tune)
    ratio = lambda_loose if field_choice == 'loose' else lambda_tight
    Lambda = ScalarField2(functools.partial(ratio, c=model.c_tune),
                          '{} Lambda c={}'.format(field_choice, c_tune))
    return GeneralizedSpec(
        a=model.metric_a,
        V=model.drift_v,
        PV=model.drift_pv,
        Gamma=GAMMA,
        Lambda=Lambda,
        domain=domain,
        description='{} spec, c={}'.format(field_choice, c_tune),
    )


def d_sweep(d_step):
    """Coupling-set levels ``6 + k d_step`` strictly inside ``(6, 2 pi^2)``."""
    if not d_step > 0:
        raise DomainError('d_step must be positive, got {}'.format(d_step))
    count = int(np.ceil((TWO_PI_SQ - D_MIN) / d_step - 1e-9)) - 1
    return D_MIN + d_step * np.arange(1, max(count, 0) + 1)


def loose_spec():
    """Factory for ``--spec driftrate.nar:loose_spec``."""
    return nar_spec('loose')


def tight_spec():
    return nar_spec('tight')
