# -*- coding: utf-8 -*-
"""Closed-form rate and prefactor formulas for standard drift and contraction
conditions, the continuous-time bound, and the comparison with the
Durmus-Moulines rate.

All logarithms are natural. Open intervals are returned as endpoint pairs and
membership is tested with strict inequalities.
"""

import collections
import logging
import math

from driftrate.errors import DomainError, RangeError, HypothesisError

logger = logging.getLogger(__name__)


def _log(value):
    return -math.inf if value == 0 else math.log(value)


class StandardConditions(collections.namedtuple(
        'StandardConditions', ['a', 'eta', 'L', 'gamma', 'K', 'd'])):
    """Parameters of the standard drift and contraction conditions.

    :param float a: link between the metric and the drift function
    :param float eta: drift factor, ``0 <= eta < 1``
    :param float L: drift offset
    :param float gamma: contraction factor on the coupling set
    :param float K: expansion factor off the coupling set
    :param float d: coupling-set level, ``d > 2L / (1 - eta)``
    """
    __slots__ = ()

    def __new__(cls, a, eta, L, gamma, K, d):
        self = super(StandardConditions, cls).__new__(
            cls, float(a), float(eta), float(L), float(gamma), float(K), float(d))
        self.validate()
        return self

    def validate(self):
        if not self.a > 0:
            raise DomainError('a must be positive, got {}'.format(self.a))
        if not 0 <= self.eta < 1:
            raise DomainError('eta must lie in [0, 1), got {}'.format(self.eta))
        if not self.L >= 0:
            raise DomainError('L must be nonnegative, got {}'.format(self.L))
        if not 0 <= self.gamma < 1:
            raise DomainError('gamma must lie in [0, 1), got {}'.format(self.gamma))
        if not self.K >= 0:
            raise DomainError('K must be nonnegative, got {}'.format(self.K))
        _check_level(self.eta, self.L, self.d)

    @property
    def lam(self):
        return lambda_of_d(self.eta, self.L, self.d)


RateBound = collections.namedtuple('RateBound', ['rho', 'r', 'valid'])
RateBound.__doc__ = """A rate `rho` obtained with interpolation exponent `r`.
`valid` is true iff ``rho < 1`` and `r` is admissible."""


class GeometricBound(collections.namedtuple(
        'GeometricBound', ['prefactor', 'rho', 'n_offset'])):
    """The bound ``W(mu P^n, pi) <= prefactor * rho ** n``."""
    __slots__ = ()

    def __new__(cls, prefactor, rho, n_offset=0):
        if prefactor < 0:
            raise DomainError('prefactor must be nonnegative')
        if not 0 <= rho < 1:
            raise RangeError('rho must lie in [0, 1), got {}'.format(rho))
        return super(GeometricBound, cls).__new__(
            cls, float(prefactor), float(rho), int(n_offset))

    def at(self, n):
        return self.prefactor * self.rho ** max(n - self.n_offset, 0)


class DMConditions(collections.namedtuple(
        'DMConditions', ['eta_p', 'L_p', 'gamma_p', 'delta_p'])):
    """Drift and contraction parameters for a bounded metric, as used by the
    Durmus-Moulines geometric bound.
    """
    __slots__ = ()

    def __new__(cls, eta_p, L_p, gamma_p, delta_p):
        self = super(DMConditions, cls).__new__(
            cls, float(eta_p), float(L_p), float(gamma_p), float(delta_p))
        if not 0 <= self.eta_p < 1:
            raise DomainError('eta_p must lie in [0, 1), got {}'.format(self.eta_p))
        if not 0 < self.gamma_p < 1:
            raise DomainError('gamma_p must lie in (0, 1), got {}'.format(self.gamma_p))
        if not self.delta_p > 0:
            raise DomainError('delta_p must be positive, got {}'.format(self.delta_p))
        # the drift function is bounded below by 1
        if not self.L_p >= 1 - self.eta_p:
            raise DomainError(
                'L_p must be at least 1 - eta_p = {}, got {}'.format(
                    1 - self.eta_p, self.L_p))
        return self

    @property
    def lam(self):
        return (2 * self.L_p * (1 - self.eta_p) / (2 * self.L_p + self.delta_p)
                + self.eta_p)

    @property
    def J(self):
        return ((2 * self.L_p + self.delta_p) / (1 - self.eta_p)
                + 2 * self.L_p / self.lam)


def _check_level(eta, L, d):
    if not 0 <= eta < 1:
        raise DomainError('eta must lie in [0, 1), got {}'.format(eta))
    if not L >= 0:
        raise DomainError('L must be nonnegative, got {}'.format(L))
    if not d > 2 * L / (1 - eta):
        raise DomainError(
            'coupling-set level d must exceed 2L/(1-eta) = {}, got {}'.format(
                2 * L / (1 - eta), d))


def lambda_of_d(eta, L, d):
    """Drift factor ``(eta d + 2L + 1) / (d + 1)`` off the coupling set; always
    below one when ``d > 2L / (1 - eta)``.
    """
    _check_level(eta, L, d)
    return (eta * d + 2 * L + 1) / (d + 1)


def check_a3(c):
    """Whether the expansion off the coupling set is dominated by the drift:
    ``K <= 1`` or ``log K log(2L+1) < log gamma log lambda``.
    """
    if c.K <= 1:
        return True
    left = math.log(c.K) * math.log(2 * c.L + 1)
    right = _log(c.gamma) * math.log(c.lam)
    return left < right


def r_interval_standard(c):
    """Open interval of exponents `r` for which the standard rate is below one.

    :raises HypothesisError: if the expansion condition fails or the interval is empty
    """
    if not check_a3(c):
        raise HypothesisError(
            'expansion condition fails: log K log(2L+1) >= log gamma log lambda '
            '(K={}, L={}, gamma={}, lambda={})'.format(c.K, c.L, c.gamma, c.lam))
    log_drift = math.log(2 * c.L + 1)
    if log_drift == 0:
        lower = 0.0
    else:
        lower = log_drift / (log_drift - _log(c.gamma))
    if c.K <= 1:
        upper = 1.0
    else:
        log_lam = math.log(c.lam)
        upper = -log_lam / (math.log(c.K) - log_lam)
    if not lower < upper:
        raise HypothesisError('empty r interval ({}, {})'.format(lower, upper))
    return lower, upper


def rho_r_standard(c, r):
    """Rate ``max(gamma^r (2L+1)^(1-r), K^r lambda^(1-r))``.

    :param StandardConditions c: conditions
    :param float r: interpolation exponent in (0, 1)
    :rtype: RateBound
    """
    if not 0 < r < 1:
        raise RangeError('r must lie in (0, 1), got {}'.format(r))
    on_set = c.gamma ** r * (2 * c.L + 1) ** (1 - r)
    off_set = c.K ** r * c.lam ** (1 - r)
    rho = max(on_set, off_set)
    try:
        lower, upper = r_interval_standard(c)
    except HypothesisError:
        admissible = False
    else:
        admissible = lower < r < upper
    return RateBound(rho, r, rho < 1 and admissible)


def prefactor_standard(c, muV, rho):
    """Prefactor ``a ((eta + 1) muV + L + 1) / (1 - rho)`` for an initial
    distribution with drift moment `muV`.

    :rtype: GeometricBound
    """
    if rho >= 1:
        raise RangeError('rho must be below 1, got {}'.format(rho))
    if muV < 0:
        raise DomainError('muV must be nonnegative, got {}'.format(muV))
    prefactor = c.a * ((c.eta + 1) * muV + c.L + 1) / (1 - rho)
    return GeometricBound(prefactor, rho)


def continuous_bound(discrete, b, t_star, t):
    """Bound at time `t` for a semigroup whose time-`t_star` kernel satisfies
    the discrete `GeometricBound` and whose short-time expansion is `b`.
    """
    if b < 0:
        raise DomainError('b must be nonnegative, got {}'.format(b))
    if not t_star > 0:
        raise DomainError('t_star must be positive, got {}'.format(t_star))
    if t < 0:
        raise DomainError('t must be nonnegative, got {}'.format(t))
    return b * discrete.prefactor * discrete.rho ** math.floor(t / t_star)


def rho_dm(c):
    """Durmus-Moulines rate ``exp(-log lambda log gamma' / (log J - log gamma'))``.

    The returned `r` is the exponent for which ``rho = lambda ** (1 - r)``.

    :param DMConditions c: conditions
    :rtype: RateBound
    """
    lam, J = c.lam, c.J
    assert c.eta_p < lam < 1 and J > 1
    log_gamma = math.log(c.gamma_p)
    rho = math.exp(-math.log(lam) * log_gamma / (math.log(J) - log_gamma))
    r = math.log(J) / (math.log(J) - log_gamma)
    return RateBound(rho, r, rho < 1)


def dm_translate(c):
    """Standard conditions implied by Durmus-Moulines conditions, with the
    drift function shifted down by one half.
    """
    L = c.L_p + c.eta_p / 2 - 0.5
    return StandardConditions(
        a=1,
        eta=c.eta_p,
        L=L,
        gamma=c.gamma_p,
        K=1,
        d=(2 * L + c.delta_p) / (1 - c.eta_p),
    )


def dm_improved_rate(c):
    """Rate from the standard conditions translated from `c`, at the exponent
    balancing both branches. Strictly smaller than ``rho_dm(c).rho``.

    :rtype: RateBound
    """
    translated = dm_translate(c)
    log_drift = math.log(2 * translated.L + 1)
    log_lam = math.log(translated.lam)
    r = (log_drift - log_lam) / (log_drift - log_lam - math.log(translated.gamma))
    bound = rho_r_standard(translated, r)
    logger.debug('dm translation %s -> r=%.6f rho=%.6f', translated, r, bound.rho)
    return bound
