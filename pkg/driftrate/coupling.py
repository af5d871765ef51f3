# -*- coding: utf-8 -*-
"""Monte Carlo checks of the bounds: synchronously coupled trajectories,
Wasserstein decay curves and the one-step contraction of ``psi_r``.

Replicas are simulated in blocks of ``DRIFTRATE_BLOCK_SIZE``. Block ``k`` draws
its noise from ``SeedSequence(seed, spawn_key=(k, 0))`` and its burn-in from
``spawn_key=(k, 1)``, and always draws a full block, so adding replicas never
changes the earlier ones.
"""

import collections
import logging

import numpy as np
from scipy import stats

from driftrate import config
from driftrate.errors import DomainError, NonFiniteError, VerificationError

logger = logging.getLogger(__name__)

Y0_MODES = ('fixed', 'stationary')
ESTIMATORS = ('coupling-expectation', 'empirical-quantile')

NOISE_KEY, BURN_IN_KEY = 0, 1
_EPS = np.finfo(float).eps


def _generator(seed, *key):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


class SimConfig(object):
    """Settings of a coupled simulation.

    :param NARModel model: chain
    :param x0: initial state of the first chain
    :param y0: initial state of the second chain when `y0_mode` is ``'fixed'``
    :param str y0_mode: ``'fixed'`` or ``'stationary'`` (each replica's second
        chain starts from the end of a burn-in run started at the origin)
    :param int burn_in: burn-in length for stationary starts
    :param bool debug: check the coupling identity on every step
    """

    def __init__(self, model, x0, n_steps, n_replicas, y0=None, y0_mode='fixed',
                 seed=None, burn_in=None, debug=False, block_size=None):
        if y0_mode not in Y0_MODES:
            raise DomainError('y0_mode must be one of {}, got {!r}'.format(Y0_MODES, y0_mode))
        if y0_mode == 'fixed' and y0 is None:
            raise DomainError('a fixed start needs y0')
        if n_steps < 1:
            raise DomainError('n_steps must be at least 1, got {}'.format(n_steps))
        if n_replicas < 1:
            raise DomainError('n_replicas must be at least 1, got {}'.format(n_replicas))
        self.model = model
        self.x0 = x0
        self.y0 = y0
        self.y0_mode = y0_mode
        self.n_steps = int(n_steps)
        self.n_replicas = int(n_replicas)
        self.seed = config.get('DRIFTRATE_SEED') if seed is None else int(seed)
        self.burn_in = config.get('DRIFTRATE_BURN_IN') if burn_in is None else int(burn_in)
        if self.burn_in < 0:
            raise DomainError('burn_in must be nonnegative, got {}'.format(self.burn_in))
        self.debug = debug
        self.block_size = int(block_size or config.get('DRIFTRATE_BLOCK_SIZE'))

    def __repr__(self):
        return '<SimConfig {!r} x0={} y0={} steps={} replicas={} seed={}>'.format(
            self.model, self.x0, self.y0 if self.y0_mode == 'fixed' else 'stationary',
            self.n_steps, self.n_replicas, self.seed)

    def state_shape(self, count):
        return (count, ) if self.model.dim == 1 else (count, self.model.dim)


class WassersteinCurve(object):
    """Per-step estimates of the Wasserstein distance between the two coupled
    marginals, steps ``0..n_steps``.
    """

    def __init__(self, estimates, standard_errors, estimator):
        if estimator not in ESTIMATORS:
            raise DomainError('unknown estimator {!r}'.format(estimator))
        self.estimates = np.asarray(estimates, dtype=float)
        self.standard_errors = np.asarray(standard_errors, dtype=float)
        self.estimator = estimator

    def __len__(self):
        return self.estimates.size

    def __repr__(self):
        return '<WassersteinCurve {} steps={}>'.format(self.estimator, len(self) - 1)

    @property
    def steps(self):
        return np.arange(len(self))

    def rows(self, bound=None):
        """``(step, estimate, stderr, bound_value)`` tuples."""
        for n, (estimate, se) in enumerate(zip(self.estimates, self.standard_errors)):
            yield n, float(estimate), float(se), None if bound is None else bound.at(n)


PathRecord = collections.namedtuple('PathRecord', ['x', 'y', 'gap'])


def step_synchronous(model, x, y, z):
    """Advance both chains with the same noise draw `z`."""
    return model.g(x) + z, model.g(y) + z


def _advance(model, x, gap, z):
    # the gap is propagated through the difference quotient so that it never
    # suffers cancellation in x - y
    y = x - gap
    if model.slope is None:
        new_x, new_y = step_synchronous(model, x, y, z)
        return new_x, new_x - new_y
    return model.g(x) + z, model.slope(x, y) * gap


def _check_identity(model, x, gap, new_gap, step):
    # |X' - Y'| = |g(X) - g(Y)| whatever the shared noise
    direct_x, direct_y = step_synchronous(model, x, x - gap, 0.0)
    direct = np.abs(direct_x - direct_y)
    # relative 1e-12, or the rounding floor of the direct difference
    tolerance = np.maximum(1e-12 * direct, 64 * _EPS * (1 + np.abs(direct_x) + np.abs(direct_y)))
    if np.any(np.abs(direct - np.abs(new_gap)) > tolerance):
        raise VerificationError('coupling identity broken at step {}'.format(step))


def _burn_in(cfg, block, count):
    rng = _generator(cfg.seed, block, BURN_IN_KEY)
    y = np.zeros(cfg.state_shape(count))
    for _ in range(cfg.burn_in):
        z = rng.standard_normal(cfg.state_shape(cfg.block_size))[:count]
        y = cfg.model.g(y) + cfg.model.noise_std * z
    return y


def _simulate_block(cfg, block, count):
    model = cfg.model
    shape = cfg.state_shape(count)
    x = np.broadcast_to(np.asarray(cfg.x0, dtype=float), shape).copy()
    if cfg.y0_mode == 'stationary':
        y = _burn_in(cfg, block, count)
    else:
        y = np.broadcast_to(np.asarray(cfg.y0, dtype=float), shape).copy()
    gap = x - y

    xs = np.empty((cfg.n_steps + 1, ) + shape)
    gaps = np.empty((cfg.n_steps + 1, ) + shape)
    xs[0], gaps[0] = x, gap
    rng = _generator(cfg.seed, block, NOISE_KEY)
    for n in range(1, cfg.n_steps + 1):
        z = model.noise_std * rng.standard_normal(cfg.state_shape(cfg.block_size))[:count]
        new_x, new_gap = _advance(model, x, gap, z)
        if not (np.all(np.isfinite(new_x)) and np.all(np.isfinite(new_gap))):
            raise NonFiniteError('trajectory diverged at step {} of block {}'.format(n, block))
        if cfg.debug:
            _check_identity(model, x, gap, new_gap, n)
        x, gap = new_x, new_gap
        xs[n], gaps[n] = x, gap
    return xs, gaps


def _simulate(cfg):
    blocks = []
    for block, start in enumerate(range(0, cfg.n_replicas, cfg.block_size)):
        count = min(cfg.block_size, cfg.n_replicas - start)
        logger.debug('simulating block %d (%d replicas)', block, count)
        blocks.append(_simulate_block(cfg, block, count))
    xs = np.concatenate([b[0] for b in blocks], axis=1)
    gaps = np.concatenate([b[1] for b in blocks], axis=1)
    return xs, gaps


def _distances(model, gaps):
    return np.abs(gaps) if model.dim == 1 else np.sqrt(np.sum(gaps ** 2, axis=-1))


def _mean_and_error(samples):
    # samples: (steps, replicas)
    mean = np.mean(samples, axis=1)
    if samples.shape[1] < 2:
        return mean, np.zeros_like(mean)
    return mean, np.std(samples, axis=1, ddof=1) / np.sqrt(samples.shape[1])


def simulate_curve(cfg):
    """Coupling-expectation estimate of ``W1`` at every step: the mean over
    replicas of ``|X_n - Y_n|``, with its standard error.

    :rtype: WassersteinCurve
    """
    _, gaps = _simulate(cfg)
    estimates, errors = _mean_and_error(_distances(cfg.model, gaps))
    logger.info('simulated %d replicas over %d steps: W1 estimate %.3g -> %.3g',
                cfg.n_replicas, cfg.n_steps, estimates[0], estimates[-1])
    return WassersteinCurve(estimates, errors, 'coupling-expectation')


def estimate_w1_empirical(sample_a, sample_b):
    """Exact ``W1`` between two empirical measures of equal size on the line."""
    a = np.asarray(sample_a, dtype=float).ravel()
    b = np.asarray(sample_b, dtype=float).ravel()
    if not a.size or not b.size:
        raise DomainError('samples must be nonempty')
    if a.size != b.size:
        raise DomainError('sample sizes differ: {} != {}'.format(a.size, b.size))
    return float(np.mean(np.abs(np.sort(a) - np.sort(b))))


def empirical_curve(cfg):
    """Quantile-coupling estimate of ``W1`` between the marginals of ``X_n``
    and ``Y_n`` on the paths simulated for `cfg`.

    :rtype: WassersteinCurve
    """
    if cfg.model.dim != 1:
        raise DomainError('the quantile estimator needs one-dimensional states')
    xs, gaps = _simulate(cfg)
    diffs = np.abs(np.sort(xs, axis=1) - np.sort(xs - gaps, axis=1))
    estimates, errors = _mean_and_error(diffs)
    return WassersteinCurve(estimates, errors, 'empirical-quantile')


def coupled_path(model, x0, y0, n_steps, seed=None):
    """A single coupled trajectory, checked step by step.

    :rtype: PathRecord
    """
    cfg = SimConfig(model, x0, n_steps, 1, y0=y0, seed=seed, debug=True, block_size=1)
    xs, gaps = _simulate(cfg)
    xs, gaps = xs[:, 0], gaps[:, 0]
    return PathRecord(xs, xs - gaps, gaps)


def dominance_violations(curve, bound, n_se=3.0):
    """Steps at which the curve exceeds `bound` by more than `n_se` standard
    errors.
    """
    limits = np.array([bound.at(n) for n in curve.steps]) + n_se * curve.standard_errors
    return [int(n) for n in np.flatnonzero(curve.estimates > limits)]


def curve_dominated(curve, bound, n_se=3.0):
    return not dominance_violations(curve, bound, n_se)


def log_slope(curve, start, stop):
    """Least-squares slope of ``log estimate`` against the step over
    ``start..stop`` inclusive.
    """
    if not 0 <= start < stop < len(curve):
        raise DomainError('need 0 <= start < stop < {}, got ({}, {})'.format(
            len(curve), start, stop))
    window = curve.estimates[start:stop + 1]
    if np.any(window <= 0):
        raise DomainError('curve vanishes within steps {}..{}'.format(start, stop))
    return float(stats.linregress(np.arange(start, stop + 1), np.log(window)).slope)


PairCheck = collections.namedtuple(
    'PairCheck', ['x', 'y', 'psi', 'estimate', 'stderr', 'bound', 'margin', 'passed'])


class ContractionReport(object):
    """Per-pair outcome of a ``psi_r`` contraction check."""

    def __init__(self, r, rho, checks):
        self.r = r
        self.rho = rho
        self.checks = checks

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    @property
    def min_margin(self):
        return min(check.margin for check in self.checks) if self.checks else 0.0

    def __repr__(self):
        return '<ContractionReport r={} rho={} {}/{} passed>'.format(
            self.r, self.rho, len(self.checks) - len(self.failures), len(self.checks))


def _psi_r(V, gap, x, y, r):
    return np.abs(gap) ** r * (V(x) + V(y) + 1) ** (1 - r)


def verify_psi_r_contraction(model, spec, r, rho, pairs, n_noise, seed=None):
    """Monte Carlo check of ``E psi_r(X_1, Y_1) <= rho psi_r(x, y)`` for
    synchronously coupled one-step moves from each pair, where
    ``psi_r(x, y) = |x - y|^r (V(x) + V(y) + 1)^(1 - r)``.

    A pair passes when the estimate is at most ``rho psi_r(x, y)`` plus three
    standard errors.

    :rtype: ContractionReport
    """
    if model.dim != 1:
        raise DomainError('contraction checks need one-dimensional states')
    if n_noise < 2:
        raise DomainError('n_noise must be at least 2, got {}'.format(n_noise))
    seed = config.get('DRIFTRATE_SEED') if seed is None else seed
    checks = []
    for i, (x, y) in enumerate(pairs):
        x, y = float(x), float(y)
        psi = float(_psi_r(spec.V, x - y, x, y, r))
        z = model.noise_std * _generator(seed, i).standard_normal(n_noise)
        new_x, new_gap = _advance(model, np.full(n_noise, x), np.full(n_noise, x - y), z)
        values = _psi_r(spec.V, new_gap, new_x, new_x - new_gap, r)
        if not np.all(np.isfinite(values)):
            raise NonFiniteError('psi_r is not finite after a move from ({}, {})'.format(x, y))
        estimate = float(np.mean(values))
        stderr = float(np.std(values, ddof=1) / np.sqrt(n_noise))
        margin = rho * psi + 3 * stderr - estimate
        checks.append(PairCheck(x, y, psi, estimate, stderr, rho * psi, margin, margin >= 0))
    report = ContractionReport(r, rho, checks)
    logger.info('%r, smallest margin %.3g', report, report.min_margin)
    return report
