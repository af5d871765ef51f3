# -*- coding: utf-8 -*-
"""Generalized rate ``sup Gamma^r Lambda^(1-r)`` over a compact search domain.

The supremum is found by a deterministic grid sweep followed by local
refinement around the best cells. Reported values come from evaluated points
only, so they approximate the supremum from below.
"""

import functools
import logging

import numpy as np
from scipy import optimize

from driftrate import config
from driftrate.errors import DomainError, RangeError, HypothesisError, NonFiniteError
from driftrate.rates import RateBound, GeometricBound, StandardConditions

logger = logging.getLogger(__name__)

# lattice points are snapped with this slack so that exact multiples survive
# floating point division
_SNAP = 1e-9

# lattices, field values on them and nar specs are memoized at module level.
# The cached arrays are never written to after they are stored.
GRID_CACHE_SIZE = 8


class CompactDomain(object):
    """A bounded search region in the plane.

    :param str kind: ``'box'`` or ``'disk'``
    :param tuple bounds: ``((xlo, xhi), (ylo, yhi))`` for a box,
        ``((cx, cy), radius)`` for a disk
    :param str justification: why the supremum over the whole plane is
        attained inside this region
    """

    def __init__(self, kind, bounds, justification=''):
        if kind == 'box':
            (xlo, xhi), (ylo, yhi) = bounds
            bounds = ((float(xlo), float(xhi)), (float(ylo), float(yhi)))
            if not (xlo < xhi and ylo < yhi):
                raise DomainError('box bounds must satisfy lo < hi: {}'.format(bounds))
        elif kind == 'disk':
            (cx, cy), radius = bounds
            bounds = ((float(cx), float(cy)), float(radius))
            if not radius > 0:
                raise DomainError('disk radius must be positive, got {}'.format(radius))
        else:
            raise DomainError('unknown domain kind {!r}'.format(kind))
        self.kind = kind
        self.bounds = bounds
        self.justification = justification

    @classmethod
    def box(cls, xlim, ylim, justification=''):
        return cls('box', (xlim, ylim), justification)

    @classmethod
    def disk(cls, center, radius, justification=''):
        return cls('disk', (center, radius), justification)

    def __eq__(self, other):
        if isinstance(other, CompactDomain):
            return (self.kind, self.bounds) == (other.kind, other.bounds)
        return NotImplemented

    def __ne__(self, other):
        ret = self.__eq__(other)
        return ret if ret is NotImplemented else not ret

    def __hash__(self):
        return hash((self.kind, self.bounds))

    def __repr__(self):
        return 'CompactDomain({!r}, {!r})'.format(self.kind, self.bounds)

    def contains(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        if self.kind == 'box':
            (xlo, xhi), (ylo, yhi) = self.bounds
            return (x >= xlo) & (x <= xhi) & (y >= ylo) & (y <= yhi)
        (cx, cy), radius = self.bounds
        return (x - cx) ** 2 + (y - cy) ** 2 <= radius ** 2

    def bounding_box(self):
        if self.kind == 'box':
            return self.bounds
        (cx, cy), radius = self.bounds
        return (cx - radius, cx + radius), (cy - radius, cy + radius)

    def sample(self, n, seed=0):
        """`n` uniform points of the domain as an ``(n, 2)`` array."""
        rng = np.random.default_rng(seed)
        (xlo, xhi), (ylo, yhi) = self.bounding_box()
        points = np.empty((0, 2))
        while len(points) < n:
            draw = np.column_stack([rng.uniform(xlo, xhi, n), rng.uniform(ylo, yhi, n)])
            points = np.concatenate([points, draw[self.contains(draw[:, 0], draw[:, 1])]])
        return points[:n]


class Grid(object):
    """Lattice points of a domain, flattened in lexicographic (x, y) order."""

    def __init__(self, domain, step, x, y):
        self.domain = domain
        self.step = step
        self.x = x
        self.y = y

    @property
    def key(self):
        return (self.domain, self.step)

    def __len__(self):
        return self.x.size


def _axis(lo, hi, step):
    count = int(np.floor((hi - lo) / step + _SNAP)) + 1
    return lo + step * np.arange(count)


@functools.lru_cache(maxsize=16)
def lattice(domain, step):
    """Uniform lattice of spacing `step` over `domain`. Boxes are anchored at
    their lower corner and disks at their center, so a lattice of spacing
    ``step / 2`` contains every point of the lattice of spacing `step`.
    """
    if not step > 0:
        raise DomainError('grid step must be positive, got {}'.format(step))
    if domain.kind == 'box':
        (xlo, xhi), (ylo, yhi) = domain.bounds
        xs, ys = _axis(xlo, xhi, step), _axis(ylo, yhi, step)
    else:
        (cx, cy), radius = domain.bounds
        half = int(np.floor(radius / step + _SNAP))
        offsets = step * np.arange(-half, half + 1)
        xs, ys = cx + offsets, cy + offsets
    gx, gy = np.meshgrid(xs, ys, indexing='ij')
    gx, gy = gx.ravel(), gy.ravel()
    inside = domain.contains(gx, gy)
    logger.debug('lattice %r step=%g: %d points', domain, step, int(inside.sum()))
    return Grid(domain, step, gx[inside], gy[inside])


class ScalarField2(object):
    """Real-valued function of a state pair, evaluated on numpy arrays.

    :param callable func: ``func(x, y)`` broadcasting over arrays
    :param str description: label
    """

    def __init__(self, func, description=''):
        self.func = func
        self.description = description
        self._grid_cache = {}

    def __call__(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        values = np.asarray(self.func(x, y), dtype=float)
        return values + np.zeros(np.broadcast(x, y).shape)

    def __repr__(self):
        return '<{} {}>'.format(self.__class__.__name__, self.description or self.func)

    def _remember(self, key, values):
        if len(self._grid_cache) >= GRID_CACHE_SIZE:
            self._grid_cache.clear()
        self._grid_cache[key] = values
        return values

    def on_grid(self, grid):
        """Values on every point of `grid`, memoized per lattice."""
        cached = self._grid_cache.get(grid.key)
        if cached is None:
            cached = self._remember(grid.key, self(grid.x, grid.y))
        return cached

    def log_on_grid(self, grid):
        key = ('log', ) + grid.key
        cached = self._grid_cache.get(key)
        if cached is None:
            with np.errstate(divide='ignore'):
                cached = self._remember(key, np.log(self.on_grid(grid)))
        return cached


class PowerProduct(ScalarField2):
    """The field ``gamma ** r * lambda_ ** (1 - r)``."""

    def __init__(self, gamma, lambda_, r):
        self.gamma = gamma
        self.lambda_ = lambda_
        self.r = r
        super(PowerProduct, self).__init__(
            self._evaluate, 'Gamma^{0} Lambda^{1}'.format(r, 1 - r))

    def _evaluate(self, x, y):
        return np.power(self.gamma(x, y), self.r) * np.power(self.lambda_(x, y), 1 - self.r)

    def on_grid(self, grid):
        if self.r == 0:
            return self.lambda_.on_grid(grid)
        if self.r == 1:
            return self.gamma.on_grid(grid)
        return np.exp(
            self.r * self.gamma.log_on_grid(grid) +
            (1 - self.r) * self.lambda_.log_on_grid(grid)
        )


class GeneralizedSpec(object):
    """Generalized drift and contraction data.

    :param float a: link between the metric and the drift function
    :param callable V: drift function of a state
    :param callable PV: one-step expectation of `V`
    :param ScalarField2 Gamma: contraction field
    :param ScalarField2 Lambda: drift ratio field, at least
        ``(PV(x) + PV(y) + 1) / (V(x) + V(y) + 1)``
    :param CompactDomain domain: region containing the maximizers
    """

    def __init__(self, a, V, PV, Gamma, Lambda, domain, description=''):
        if not a > 0:
            raise DomainError('a must be positive, got {}'.format(a))
        self.a = a
        self.V = V
        self.PV = PV
        self.Gamma = Gamma
        self.Lambda = Lambda
        self.domain = domain
        self.description = description

    def __repr__(self):
        return '<GeneralizedSpec {}>'.format(self.description or id(self))

    def drift_ratio(self, x, y):
        return (self.PV(x) + self.PV(y) + 1) / (self.V(x) + self.V(y) + 1)

    def check(self, n=1000, seed=0):
        """Spot-check the spec's hypotheses at `n` random points of its domain.

        :raises HypothesisError: if any sampled point violates them
        """
        x, y = self.domain.sample(n, seed).T
        if np.any(self.V(x) < 0):
            raise HypothesisError('drift function V takes negative values')
        for field in (self.Gamma, self.Lambda):
            if np.any(field(x, y) < 0):
                raise HypothesisError('{!r} takes negative values'.format(field))
        ratio = self.drift_ratio(x, y)
        violations = self.Lambda(x, y) < ratio * (1 - 1e-12)
        if np.any(violations):
            index = int(np.argmax(violations))
            raise HypothesisError(
                'Lambda is below the drift ratio at ({}, {})'.format(x[index], y[index]))
        return True


class SupremumResult(object):

    def __init__(self, value, argmax, grid_step, evaluations):
        self.value = value
        self.argmax = argmax
        self.grid_step = grid_step
        self.evaluations = evaluations

    def __repr__(self):
        return 'SupremumResult(value={!r}, argmax={!r}, grid_step={!r}, evaluations={!r})'.format(
            self.value, self.argmax, self.grid_step, self.evaluations)


def _check_finite(values, field):
    if not np.all(np.isfinite(values)):
        raise NonFiniteError('{!r} produced a non-finite value'.format(field))


def _top(x, y, values, k):
    # best value first, ties to the lexicographically smallest point
    k = min(k, values.size)
    pool = np.arange(values.size)
    if values.size > k:
        threshold = np.partition(values, values.size - k)[values.size - k]
        pool = np.flatnonzero(values >= threshold)
    order = np.lexsort((y[pool], x[pool], -values[pool]))
    return pool[order[:k]]


def sup_field(field, domain, initial_step=None, refine_levels=None, top_k=None):
    """Maximize `field` over `domain`.

    Evaluates a lattice of spacing `initial_step`, then at each refinement
    level halves the step and evaluates the 5x5 neighbourhood (one coarse cell
    in each direction) of the `top_k` best points of the previous level.

    :rtype: SupremumResult
    """
    initial_step = initial_step or config.get('DRIFTRATE_GRID_STEP')
    if refine_levels is None:
        refine_levels = config.get('DRIFTRATE_REFINE_LEVELS')
    top_k = top_k or config.get('DRIFTRATE_TOP_K')
    if refine_levels < 0:
        raise DomainError('refine_levels must be nonnegative, got {}'.format(refine_levels))

    grid = lattice(domain, initial_step)
    if not len(grid):
        raise DomainError('no lattice points in {!r} at step {}'.format(domain, initial_step))
    values = field.on_grid(grid)
    _check_finite(values, field)
    order = _top(grid.x, grid.y, values, top_k)
    best = order[0]
    value, argmax = float(values[best]), (float(grid.x[best]), float(grid.y[best]))
    evaluations = values.size
    cand_x, cand_y = grid.x[order], grid.y[order]

    step = initial_step
    offsets = np.arange(-2, 3)
    for level in range(refine_levels):
        step /= 2.0
        px = cand_x[:, None, None] + step * offsets[None, :, None]
        py = cand_y[:, None, None] + step * offsets[None, None, :]
        px, py = np.broadcast_arrays(px, py)
        points = np.stack([px.ravel(), py.ravel()], axis=1)
        points = np.unique(points[domain.contains(points[:, 0], points[:, 1])], axis=0)
        px, py = points[:, 0], points[:, 1]
        values = field(px, py)
        _check_finite(values, field)
        evaluations += values.size
        order = _top(px, py, values, top_k)
        if values[order[0]] > value:
            value = float(values[order[0]])
            argmax = (float(px[order[0]]), float(py[order[0]]))
        cand_x, cand_y = px[order], py[order]
        logger.debug('refine level %d step=%g best=%.10f at %s', level + 1, step, value, argmax)

    return SupremumResult(value, argmax, step, evaluations)


def sup_generalized(spec, r, step=None, levels=None):
    """Supremum of ``Gamma^r Lambda^(1-r)`` for `spec`.

    :rtype: SupremumResult
    """
    if not 0 < r < 1:
        raise RangeError('r must lie in (0, 1), got {}'.format(r))
    return sup_field(PowerProduct(spec.Gamma, spec.Lambda, r), spec.domain, step, levels)


def rho_r_generalized(spec, r, step=None, levels=None):
    """Generalized rate ``sup Gamma^r Lambda^(1-r)``; valid iff below one.

    :rtype: RateBound
    """
    result = sup_generalized(spec, r, step, levels)
    return RateBound(result.value, r, result.value < 1)


def r_interval_generalized(spec, step=None):
    """Exponents for which the generalized rate is certainly below one,
    evaluated on the coarse lattice of `spec.domain`.

    Points where the two fields coincide, or either vanishes, do not constrain
    the interval.

    :raises HypothesisError: if ``min(Gamma, Lambda) >= 1`` somewhere or the
        interval is empty
    """
    grid = lattice(spec.domain, step or config.get('DRIFTRATE_GRID_STEP'))
    gamma, lam = spec.Gamma.on_grid(grid), spec.Lambda.on_grid(grid)
    worst = np.minimum(gamma, lam)
    if np.max(worst) >= 1:
        index = int(np.argmax(worst))
        raise HypothesisError(
            'min(Gamma, Lambda) >= 1 at ({}, {})'.format(grid.x[index], grid.y[index]))
    usable = (gamma > 0) & (lam > 0)
    log_gamma = np.log(np.where(usable, gamma, 1.0))
    log_lam = np.log(np.where(usable, lam, 1.0))
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = log_lam / (log_lam - log_gamma)
    above = usable & (lam > gamma)
    below = usable & (lam < gamma)
    lower = max(float(ratio[above].max()) if above.any() else 0.0, 0.0)
    upper = min(float(ratio[below].min()) if below.any() else 1.0, 1.0)
    if not lower < upper:
        raise HypothesisError('empty r interval ({}, {})'.format(lower, upper))
    return lower, upper


def interior(lower, upper, margin=1e-3):
    """``[lower, upper]`` shrunk at both ends by `margin` times its width."""
    if not lower < upper:
        raise RangeError('empty interval ({}, {})'.format(lower, upper))
    width = upper - lower
    return lower + margin * width, upper - margin * width


def optimize_r(rate_of_r, lo, hi, grid_points=None):
    """Minimize `rate_of_r` over ``[lo, hi]``.

    A uniform grid locates the best cell, then golden-section search (bounded
    Brent search when the grid minimum is not strictly bracketed) refines it.

    :returns: ``(r, rate)``
    """
    grid_points = grid_points or config.get('DRIFTRATE_R_POINTS')
    if not 0 <= lo < hi <= 1:
        raise RangeError('need 0 <= lo < hi <= 1, got ({}, {})'.format(lo, hi))
    if grid_points < 3:
        raise DomainError('grid_points must be at least 3, got {}'.format(grid_points))
    rs = np.linspace(lo, hi, grid_points)
    values = np.array([rate_of_r(r) for r in rs])
    i = int(np.argmin(values))
    best_r, best_value = float(rs[i]), float(values[i])
    left, right = rs[max(i - 1, 0)], rs[min(i + 1, grid_points - 1)]
    bracketed = 0 < i < grid_points - 1 and values[i] < values[i - 1] and values[i] < values[i + 1]
    if bracketed:
        result = optimize.minimize_scalar(
            rate_of_r, bracket=(left, rs[i], right), method='golden',
            options={'xtol': 1e-8})
    else:
        result = optimize.minimize_scalar(
            rate_of_r, bounds=(left, right), method='bounded',
            options={'xatol': 1e-8})
    logger.debug('optimize_r grid best r=%.6f rate=%.8f; refined r=%.8f rate=%.8f',
                 best_r, best_value, result.x, result.fun)
    if left <= result.x <= right and result.fun < best_value:
        best_r, best_value = float(result.x), float(result.fun)
    return best_r, best_value


def prefactor_generalized(spec, x, rho):
    """Prefactor ``a (PV(x) + V(x) + 1) / (1 - rho)`` for a chain started at `x`.

    :rtype: GeometricBound
    """
    if rho >= 1:
        raise RangeError('rho must be below 1, got {}'.format(rho))
    moment = float(np.sum(spec.PV(np.asarray(x, dtype=float)))
                   + np.sum(spec.V(np.asarray(x, dtype=float))))
    return GeometricBound(spec.a * (moment + 1) / (1 - rho), rho)


def coupling_set_summary(spec, d, eta, L, K=None, step=None, levels=None):
    """Standard conditions obtained by taking the sup of `spec.Gamma` over the
    coupling set ``V(x) + V(y) < d`` and over its complement within the search
    domain (unless `K` is given).

    :rtype: StandardConditions
    """
    def restrict(inside):
        def evaluate(x, y):
            level = spec.V(x) + spec.V(y)
            mask = level < d if inside else level >= d
            return np.where(mask, spec.Gamma(x, y), 0.0)
        return ScalarField2(evaluate, 'Gamma restricted to {} the coupling set'.format(
            'inside' if inside else 'outside'))

    gamma = sup_field(restrict(True), spec.domain, step, levels).value
    if K is None:
        K = sup_field(restrict(False), spec.domain, step, levels).value
    return StandardConditions(a=spec.a, eta=eta, L=L, gamma=gamma, K=K, d=d)


def grid_values(field, domain, step=None):
    """Coarse lattice values of `field`, as ``(x, y, value)`` arrays."""
    grid = lattice(domain, step or config.get('DRIFTRATE_GRID_STEP'))
    return grid.x, grid.y, field.on_grid(grid)
