# -*- coding: utf-8 -*-
"""``driftrate`` command line."""

import csv
import json
import logging
import math
import sys

import click
import numpy as np

from driftrate import __version__, apidoc, config, generalized, nar, rates, schemas, utils
from driftrate.annotations import doc, marshal_with, use_kwargs
from driftrate.coupling import (
    SimConfig, dominance_violations, log_slope, simulate_curve, verify_psi_r_contraction,
)
from driftrate.errors import (
    EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK, EXIT_VERIFICATION, HypothesisError,
)
from driftrate.schemas import OPTIMIZE

logger = logging.getLogger(__name__)

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)

# CSV columns are tagged with the figure they reproduce
GAMMA_CURVE_HEADER = ('fig1a_d', 'fig1a_gamma')
HEATMAP_HEADER = ('fig1b_x', 'fig1b_y', 'fig1b_value')


class DriftRateGroup(click.Group):
    """Group whose exit status is the code returned by the command; click
    usage errors exit with the input-error code.
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super(DriftRateGroup, self).main(
                args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as error:
            error.show()
            rv = EXIT_INPUT
        except click.Abort:
            click.echo('Aborted!', err=True)
            rv = EXIT_INPUT
        if not standalone_mode:
            return rv
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


def run_options(func):
    func = click.option(
        '--json-out', type=click.Path(dir_okay=False),
        help='Write the JSON report (including the parsed config) to this file.')(func)
    func = click.option(
        '--config', type=click.Path(exists=True, dir_okay=False),
        help='JSON config, or a previous JSON report. Flags take precedence.')(func)
    return func


def grid_options(func):
    func = click.option(
        '--levels', type=int,
        help='Refinement levels of the supremum search [DRIFTRATE_REFINE_LEVELS].')(func)
    func = click.option(
        '--grid-step', type=float,
        help='Coarse lattice spacing [DRIFTRATE_GRID_STEP].')(func)
    return func


def _write_csv(path, header, rows):
    with click.open_file(path or '-', 'w') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
    if path:
        logger.info('%d rows written to %s', len(rows), path)


def _optimize_bound(spec, r, grid_step, levels):
    if r == OPTIMIZE:
        lower, upper = generalized.r_interval_generalized(spec, grid_step)
        r, _ = generalized.optimize_r(
            lambda s: generalized.sup_generalized(spec, s, grid_step, levels).value,
            *generalized.interior(lower, upper))
    return r, generalized.sup_generalized(spec, r, grid_step, levels)


@click.group(cls=DriftRateGroup)
@click.version_option(__version__, prog_name='driftrate')
@click.option('-v', '--verbose', count=True, help='Log INFO (-v) or DEBUG (-vv) messages.')
def cli(verbose):
    """Geometric convergence rate bounds for Markov chains from drift and
    contraction conditions.
    """
    logging.basicConfig(
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        format='%(levelname)s %(name)s: %(message)s',
    )


@cli.command('standard-bound')
@run_options
@grid_options
@click.option('--chain', type=click.Choice(['nar']),
              help='Use the perturbed autoregression; d is optimized with r.')
@click.option('--a', 'a', type=float, help='Metric/drift link.')
@click.option('--eta', type=float, help='Drift factor in [0, 1).')
@click.option('--L', 'L', type=float, help='Drift offset.')
@click.option('--gamma', type=float, help='Contraction factor on the coupling set.')
@click.option('--K', 'K', type=float, help='Expansion factor off the coupling set.')
@click.option('--d', 'd', type=float, help='Coupling-set level.')
@click.option('--r', 'r', help='Exponent in (0, 1), or "optimize".')
@click.option('--mu-v', type=float, help='Drift moment of the initial distribution.')
@click.option('--d-points', type=int, help='Coarse d levels searched with --chain.')
@use_kwargs(schemas.StandardBoundSchema)
@marshal_with(schemas.StandardBoundReport, description='standard rate bound')
@doc(tags=['bounds'])
def standard_bound(run):
    """Rate and prefactor under the standard drift/contraction conditions."""
    if run.chain == 'nar':
        if run.r == OPTIMIZE:
            optimum = nar.optimize_standard_nar(
                run.d_points, grid_step=run.grid_step, levels=run.levels)
            conditions, r = optimum.conditions, optimum.r
        else:
            conditions = nar.standard_conditions_nar(run.d, run.grid_step, run.levels)
            r = run.r
    else:
        conditions, r = run.conditions, run.r

    lower, upper = rates.r_interval_standard(conditions)
    if r == OPTIMIZE:
        r, _ = generalized.optimize_r(
            lambda s: rates.rho_r_standard(conditions, s).rho,
            *generalized.interior(lower, upper))
    bound = rates.rho_r_standard(conditions, r)
    report = {
        'config': run,
        'conditions': conditions,
        'bound': bound,
        'r_interval': [lower, upper],
        'prefactor': None,
    }
    click.echo('rho = {:.6f} at r = {:.6f} (d = {:.6f}, gamma = {:.6f}, lambda = {:.6f})'.format(
        bound.rho, r, conditions.d, conditions.gamma, conditions.lam))
    if not bound.valid:
        click.echo('Error: r = {} lies outside the admissible interval ({:.6f}, {:.6f})'.format(
            r, lower, upper), err=True)
        return report, EXIT_HYPOTHESIS
    report['prefactor'] = rates.prefactor_standard(conditions, run.mu_v, bound.rho).prefactor
    click.echo('W(mu P^n, pi) <= {:.6g} * {:.6f}^n'.format(report['prefactor'], bound.rho))
    return report


def _generalized_bound(run):
    if run.spec:
        spec = utils.resolve_spec(run.spec)
        spec.check()
    else:
        spec = nar.nar_spec(run.field, run.c_tune)
    lower, upper = generalized.r_interval_generalized(spec, run.grid_step)
    r, result = _optimize_bound(spec, run.r, run.grid_step, run.levels)
    bound = rates.RateBound(result.value, r, result.value < 1)
    report = {
        'config': run,
        'bound': bound,
        'argmax': list(result.argmax),
        'r_interval': [lower, upper],
        'grid_step': result.grid_step,
        'evaluations': result.evaluations,
        'domain': spec.domain,
        'prefactor': None,
        'grid_rows': None,
    }
    click.echo('rho = {:.6f} at r = {:.6f}, argmax ({:.4f}, {:.4f})'.format(
        bound.rho, r, result.argmax[0], result.argmax[1]))
    if run.emit_grid:
        field = generalized.PowerProduct(spec.Gamma, spec.Lambda, r)
        x, y, values = generalized.grid_values(field, spec.domain, run.grid_step)
        _write_csv(run.emit_grid, HEATMAP_HEADER, list(zip(x, y, values)))
        report['grid_rows'] = int(values.size)
    if not bound.valid:
        click.echo('Error: the generalized rate is not below one', err=True)
        return report, EXIT_HYPOTHESIS
    if run.x0 is not None:
        report['prefactor'] = generalized.prefactor_generalized(spec, run.x0, bound.rho).prefactor
        click.echo('W(delta_x0 P^n, pi) <= {:.6g} * {:.6f}^n'.format(
            report['prefactor'], bound.rho))
    return report


def generalized_options(func):
    for option in reversed([
        click.option('--field', type=click.Choice(nar.FIELD_CHOICES),
                     help='Drift ratio of the autoregression example.'),
        click.option('--spec', help='Import string "module:attribute" of a GeneralizedSpec.'),
        click.option('--c-tune', type=float, help='Drift scaling c in V(x) = x^2 / c.'),
        click.option('--r', 'r', help='Exponent in (0, 1), or "optimize".'),
        click.option('--x0', type=float, help='Initial state for the prefactor.'),
    ]):
        func = option(func)
    return func


@cli.command('generalized-bound')
@run_options
@grid_options
@generalized_options
@click.option('--emit-grid', type=click.Path(dir_okay=False),
              help=('Write fig1b_x,fig1b_y,fig1b_value rows of Gamma^r Lambda^(1-r) '
                    'on the coarse lattice.'))
@use_kwargs(schemas.GeneralizedBoundSchema)
@marshal_with(schemas.GeneralizedBoundReport, description='generalized rate bound')
@doc(tags=['bounds'])
def generalized_bound(run):
    """Rate sup Gamma^r Lambda^(1-r) under the generalized conditions."""
    return _generalized_bound(run)


@cli.command('fig-heatmap')
@run_options
@grid_options
@generalized_options
@click.option('--emit-grid', '--out', 'emit_grid', type=click.Path(dir_okay=False),
              help='CSV file for the fig1b_x,fig1b_y,fig1b_value rows.')
@use_kwargs(schemas.HeatmapSchema)
@marshal_with(schemas.HeatmapReport, description='heat map of the rate field')
@doc(tags=['figures'])
def fig_heatmap(run):
    """Heat map of Gamma^r Lambda^(1-r) at the optimal (or given) r."""
    return _generalized_bound(run)


@cli.command('fig-gamma-curve')
@run_options
@grid_options
@click.option('--d-step', type=float, help='Spacing of the coupling-set levels.')
@click.option('--out', type=click.Path(dir_okay=False), help='CSV file (default stdout).')
@use_kwargs(schemas.GammaCurveSchema)
@marshal_with(schemas.GammaCurveReport, description='coupling-set contraction curve')
@doc(tags=['figures'])
def fig_gamma_curve(run):
    """Contraction factor gamma(d) of the autoregression over d in (6, 2 pi^2)."""
    levels = nar.d_sweep(run.d_step or nar.DEFAULT_D_STEP)
    rows = [
        {'d': float(d), 'gamma': nar.gamma_sup_on_coupling_set(d, run.grid_step, run.levels)}
        for d in levels
    ]
    _write_csv(run.out, GAMMA_CURVE_HEADER, [(row['d'], row['gamma']) for row in rows])
    return {'config': run, 'rows': rows}


def _dm_draws(batch, seed):
    rng = np.random.default_rng(seed)
    for _ in range(batch):
        eta = rng.uniform(0.0, 0.95)
        yield rates.DMConditions(
            eta_p=eta,
            L_p=(1 - eta) + rng.uniform(0.0, 5.0),
            gamma_p=rng.uniform(0.05, 0.95),
            delta_p=rng.uniform(0.1, 5.0),
        )


@cli.command('compare-dm')
@run_options
@click.option('--eta-p', type=float)
@click.option('--L-p', 'L_p', type=float)
@click.option('--gamma-p', type=float)
@click.option('--delta-p', type=float)
@click.option('--batch', type=int, help='Compare this many seeded random draws instead.')
@click.option('--seed', type=int, help='Seed of the batch draws [DRIFTRATE_SEED].')
@click.option('--out', type=click.Path(dir_okay=False), help='CSV file for the table.')
@use_kwargs(schemas.CompareDMSchema)
@marshal_with(schemas.CompareDMReport, description='rate comparison table')
@doc(tags=['bounds'])
def compare_dm(run):
    """Compare the Durmus-Moulines rate with the rate of the translated
    standard conditions.
    """
    if run.conditions is not None:
        draws = [run.conditions]
    else:
        seed = config.get('DRIFTRATE_SEED') if run.seed is None else run.seed
        draws = list(_dm_draws(run.batch, seed))
    rows = []
    for c in draws:
        dm, improved = rates.rho_dm(c), rates.dm_improved_rate(c)
        rows.append(dict(
            c._asdict(),
            rho_dm=dm.rho, r_dm=dm.r,
            rho_improved=improved.rho, r_improved=improved.r,
            margin=dm.rho - improved.rho,
        ))
    header = ('eta_p', 'L_p', 'gamma_p', 'delta_p', 'rho_dm', 'rho_improved', 'margin')
    if run.out:
        _write_csv(run.out, header, [[row[key] for key in header] for row in rows])
    if len(rows) == 1:
        click.echo('rho_dm = {rho_dm:.6f}, improved = {rho_improved:.6f}, margin = {margin:.6g}'
                   .format(**rows[0]))
    failures = [row for row in rows if not row['margin'] > 0]
    click.echo('{} of {} rows strictly improved'.format(len(rows) - len(failures), len(rows)))
    report = {'config': run, 'rows': rows, 'all_improved': not failures}
    if failures:
        return report, EXIT_VERIFICATION
    return report


@cli.command('verify')
@run_options
@grid_options
@click.option('--field', type=click.Choice(nar.FIELD_CHOICES),
              help='Drift ratio used for the rate and the prefactor.')
@click.option('--c-tune', type=float, help='Drift scaling c in V(x) = x^2 / c.')
@click.option('--check', type=click.Choice(schemas.CHECKS),
              help='Simulated decay curve, one-step psi_r contraction, or both.')
@click.option('--r', 'r', help='Exponent in (0, 1), or "optimize".')
@click.option('--rho', type=float, help='Rate to check instead of the computed one.')
@click.option('--x0', type=float, help='Initial state of the first chain.')
@click.option('--y0', type=float,
              help='Initial state of the second chain (default: burn-in surrogate for pi).')
@click.option('--n-steps', type=int)
@click.option('--n-replicas', type=int)
@click.option('--burn-in', type=int, help='Burn-in steps of the stationary surrogate.')
@click.option('--n-pairs', type=int, help='Random pairs for the psi_r check.')
@click.option('--n-noise', type=int, help='Noise draws per pair for the psi_r check.')
@click.option('--seed', type=int, help='Random seed [DRIFTRATE_SEED].')
@click.option('--out', type=click.Path(dir_okay=False),
              help='CSV file for step,estimate,stderr,bound_value rows.')
@use_kwargs(schemas.VerifySchema)
@marshal_with(schemas.VerifyReport, description='Monte Carlo verification report')
@doc(tags=['verification'])
def verify(run):
    """Check the generalized bound against simulated coupled chains."""
    spec = nar.nar_spec(run.field, run.c_tune)
    model = nar.nar_model(run.c_tune)
    if run.rho is None:
        r, result = _optimize_bound(spec, run.r, run.grid_step, run.levels)
        rho = result.value
    else:
        r, rho = run.r, run.rho
    if not rho < 1:
        raise HypothesisError('the generalized rate {} is not below one'.format(rho))
    bound = generalized.prefactor_generalized(spec, run.x0, rho)
    seed = config.get('DRIFTRATE_SEED') if run.seed is None else run.seed
    report = {
        'config': run, 'r': r, 'rho': rho, 'prefactor': bound.prefactor,
        'curve': [], 'violations': [], 'log_slope': None, 'contraction': None,
    }
    click.echo('checking W <= {:.6g} * {:.6f}^n (r = {:.6f})'.format(bound.prefactor, rho, r))
    passed = True

    if run.check in ('curve', 'both'):
        cfg = SimConfig(model, run.x0, run.n_steps, run.n_replicas, y0=run.y0,
                        y0_mode=run.y0_mode, seed=seed, burn_in=run.burn_in)
        curve = simulate_curve(cfg)
        rows = list(curve.rows(bound))
        if run.out:
            _write_csv(run.out, ('step', 'estimate', 'stderr', 'bound_value'), rows)
        report['curve'] = [
            dict(zip(('step', 'estimate', 'stderr', 'bound_value'), row)) for row in rows]
        report['violations'] = dominance_violations(curve, bound)
        start = min(5, run.n_steps - 1)
        if run.n_steps > 1 and np.all(curve.estimates[start:] > 0):
            report['log_slope'] = log_slope(curve, start, run.n_steps)
        passed = passed and not report['violations']
        click.echo('decay curve: {} of {} steps above the bound'.format(
            len(report['violations']), len(curve)))

    if run.check in ('psi', 'both'):
        pairs = spec.domain.sample(run.n_pairs, seed)
        contraction = verify_psi_r_contraction(model, spec, r, rho, pairs, run.n_noise, seed)
        report['contraction'] = contraction
        passed = passed and contraction.passed
        click.echo('psi_r contraction: {} of {} pairs failed, smallest margin {:.3g}'.format(
            len(contraction.failures), len(contraction.checks), contraction.min_margin))

    report['passed'] = passed
    click.echo('PASS' if passed else 'FAIL')
    if not passed:
        return report, EXIT_VERIFICATION
    return report


@cli.command('continuous-bound')
@run_options
@click.option('--prefactor', type=float, help='Prefactor of the time-t_star kernel bound.')
@click.option('--rho', type=float, help='Rate of the time-t_star kernel bound.')
@click.option('--b', 'b', type=float, help='Short-time expansion of the semigroup.')
@click.option('--t-star', type=float, help='Sampling time of the discrete chain.')
@click.option('--t', 't', type=float, help='Time at which to evaluate the bound.')
@use_kwargs(schemas.ContinuousBoundSchema)
@marshal_with(schemas.ContinuousBoundReport, description='continuous-time bound')
@doc(tags=['bounds'])
def continuous_bound(run):
    """Bound at time t for a semigroup sampled every t_star."""
    discrete = rates.GeometricBound(run.prefactor, run.rho)
    value = rates.continuous_bound(discrete, run.b, run.t_star, run.t)
    periods = int(math.floor(run.t / run.t_star))
    click.echo('W(mu P_t, pi) <= {:.6g} ({} periods of {})'.format(value, periods, run.t_star))
    return {'config': run, 'value': value, 'periods': periods}


@cli.command('schema')
@click.option('--out', type=click.Path(dir_okay=False), help='Output file (default stdout).')
def schema(out):
    """OpenAPI document of every command's JSON config and JSON report."""
    spec = apidoc.document(cli)
    with click.open_file(out or '-', 'w') as fp:
        json.dump(spec.to_dict(), fp, indent=2, sort_keys=True)
        fp.write('\n')
    return EXIT_OK


def main():
    cli.main(prog_name='driftrate')
