# -*- coding: utf-8 -*-
"""marshmallow schemas for command configs (loaded from flags and JSON
config files) and command reports (dumped to JSON).
"""

from marshmallow import Schema, ValidationError, fields, post_load, validate, validates_schema

from driftrate.coupling import Y0_MODES
from driftrate.errors import DriftRateError
from driftrate.nar import FIELD_CHOICES, d_sweep
from driftrate.rates import DMConditions, StandardConditions

OPTIMIZE = 'optimize'
CHECKS = ('curve', 'psi', 'both')

Positive = validate.Range(min=0, min_inclusive=False)
NonNegative = validate.Range(min=0)
UnitInterval = validate.Range(min=0, max=1, max_inclusive=False)


class Run(object):
    """Parsed command config; attributes mirror the schema fields."""

    def __init__(self, **kwargs):
        self.__dict__.update(kwargs)

    def __eq__(self, other):
        if isinstance(other, Run):
            return self.__dict__ == other.__dict__
        return NotImplemented

    def __ne__(self, other):
        ret = self.__eq__(other)
        return ret if ret is NotImplemented else not ret

    def __repr__(self):
        return 'Run({})'.format(', '.join(
            '{}={!r}'.format(key, value) for key, value in sorted(self.__dict__.items())))


class Exponent(fields.Field):
    """An interpolation exponent in (0, 1), or ``'optimize'``."""

    default_error_messages = {
        'invalid': 'Must be a number in (0, 1) or "optimize".',
    }

    def _serialize(self, value, attr, obj, **kwargs):
        return value

    def _deserialize(self, value, attr, data, **kwargs):
        if value == OPTIMIZE:
            return value
        try:
            r = float(value)
        except (TypeError, ValueError):
            raise self.make_error('invalid')
        if not 0 < r < 1:
            raise self.make_error('invalid')
        return r


def _domain_check(build, **kwargs):
    try:
        return build(**kwargs)
    except DriftRateError as error:
        raise ValidationError(str(error))


class RunSchema(Schema):

    @post_load
    def make_run(self, data, **kwargs):
        return Run(**data)


class GridSchema(RunSchema):
    grid_step = fields.Float(load_default=None, validate=Positive)
    levels = fields.Int(load_default=None, validate=NonNegative)


class StandardBoundSchema(GridSchema):
    chain = fields.Str(load_default=None, validate=validate.OneOf(['nar']))
    a = fields.Float(load_default=None)
    eta = fields.Float(load_default=None)
    L = fields.Float(load_default=None)
    gamma = fields.Float(load_default=None)
    K = fields.Float(load_default=None)
    d = fields.Float(load_default=None)
    r = Exponent(load_default=OPTIMIZE)
    mu_v = fields.Float(load_default=0.0, validate=NonNegative)
    d_points = fields.Int(load_default=40, validate=validate.Range(min=3))

    PARAMS = ('a', 'eta', 'L', 'gamma', 'K', 'd')

    @validates_schema
    def validate_conditions(self, data, **kwargs):
        if data['chain'] == 'nar':
            if data['r'] != OPTIMIZE and data['d'] is None:
                raise ValidationError('a fixed r for the chain needs d', 'd')
            return
        missing = [name for name in self.PARAMS if data[name] is None]
        if missing:
            raise ValidationError('required unless chain is given: {}'.format(
                ', '.join(missing)))
        _domain_check(StandardConditions, **{name: data[name] for name in self.PARAMS})

    @post_load
    def make_run(self, data, **kwargs):
        run = Run(**data)
        if data['chain'] is None:
            run.conditions = StandardConditions(**{name: data[name] for name in self.PARAMS})
        return run


class GeneralizedBoundSchema(GridSchema):
    field = fields.Str(load_default='loose', validate=validate.OneOf(FIELD_CHOICES))
    spec = fields.Str(load_default=None)
    c_tune = fields.Float(load_default=1.0, validate=validate.Range(min=0.5))
    r = Exponent(load_default=OPTIMIZE)
    x0 = fields.Float(load_default=None)
    emit_grid = fields.Str(load_default=None)


class HeatmapSchema(GeneralizedBoundSchema):
    emit_grid = fields.Str(required=True)


class GammaCurveSchema(GridSchema):
    d_step = fields.Float(load_default=None, validate=Positive)
    out = fields.Str(load_default=None)

    @validates_schema
    def validate_sweep(self, data, **kwargs):
        if data['d_step'] is not None and len(d_sweep(data['d_step'])) < 3:
            raise ValidationError('d_step leaves fewer than 3 levels in (6, 2 pi^2)', 'd_step')


class CompareDMSchema(RunSchema):
    eta_p = fields.Float(load_default=None)
    L_p = fields.Float(load_default=None)
    gamma_p = fields.Float(load_default=None)
    delta_p = fields.Float(load_default=None)
    batch = fields.Int(load_default=None, validate=validate.Range(min=1))
    seed = fields.Int(load_default=None)
    out = fields.Str(load_default=None)

    PARAMS = ('eta_p', 'L_p', 'gamma_p', 'delta_p')

    @validates_schema
    def validate_conditions(self, data, **kwargs):
        given = [name for name in self.PARAMS if data[name] is not None]
        if data['batch'] is not None:
            if given:
                raise ValidationError('batch draws exclude explicit conditions')
            return
        if len(given) != len(self.PARAMS):
            raise ValidationError('give all of {} or a batch size'.format(', '.join(self.PARAMS)))
        _domain_check(DMConditions, **{name: data[name] for name in self.PARAMS})

    @post_load
    def make_run(self, data, **kwargs):
        run = Run(**data)
        run.conditions = None
        if data['batch'] is None:
            run.conditions = DMConditions(**{name: data[name] for name in self.PARAMS})
        return run


class VerifySchema(GridSchema):
    field = fields.Str(load_default='tight', validate=validate.OneOf(FIELD_CHOICES))
    c_tune = fields.Float(load_default=1.0, validate=validate.Range(min=0.5))
    check = fields.Str(load_default='curve', validate=validate.OneOf(CHECKS))
    r = Exponent(load_default=OPTIMIZE)
    rho = fields.Float(load_default=None, validate=validate.Range(
        min=0, max=1, min_inclusive=False, max_inclusive=False))
    x0 = fields.Float(load_default=3.0)
    y0 = fields.Float(load_default=None)
    n_steps = fields.Int(load_default=30, validate=validate.Range(min=1))
    n_replicas = fields.Int(load_default=10000, validate=validate.Range(min=1))
    burn_in = fields.Int(load_default=None, validate=NonNegative)
    n_pairs = fields.Int(load_default=50, validate=validate.Range(min=1))
    n_noise = fields.Int(load_default=10000, validate=validate.Range(min=2))
    seed = fields.Int(load_default=None)
    out = fields.Str(load_default=None)

    @validates_schema
    def validate_rate(self, data, **kwargs):
        if data['rho'] is not None and data['r'] == OPTIMIZE:
            raise ValidationError('an injected rho needs a fixed r', 'r')

    @post_load
    def make_run(self, data, **kwargs):
        run = Run(**data)
        run.y0_mode = Y0_MODES[0] if data['y0'] is not None else Y0_MODES[1]
        return run


class ContinuousBoundSchema(RunSchema):
    prefactor = fields.Float(required=True, validate=NonNegative)
    rho = fields.Float(required=True, validate=UnitInterval)
    b = fields.Float(required=True, validate=NonNegative)
    t_star = fields.Float(required=True, validate=Positive)
    t = fields.Float(required=True, validate=NonNegative)


class RateBoundSchema(Schema):
    rho = fields.Float()
    r = fields.Float()
    valid = fields.Bool()


class ConditionsSchema(Schema):
    a = fields.Float()
    eta = fields.Float()
    L = fields.Float()
    gamma = fields.Float()
    K = fields.Float()
    d = fields.Float()
    lam = fields.Float()


class DomainSchema(Schema):
    kind = fields.Str()
    bounds = fields.Raw()
    justification = fields.Str()


class StandardBoundReport(Schema):
    config = fields.Nested(StandardBoundSchema)
    conditions = fields.Nested(ConditionsSchema)
    bound = fields.Nested(RateBoundSchema)
    r_interval = fields.List(fields.Float())
    prefactor = fields.Float(allow_none=True)


class GeneralizedBoundReport(Schema):
    config = fields.Nested(GeneralizedBoundSchema)
    bound = fields.Nested(RateBoundSchema)
    argmax = fields.List(fields.Float())
    r_interval = fields.List(fields.Float())
    grid_step = fields.Float()
    evaluations = fields.Int()
    domain = fields.Nested(DomainSchema)
    prefactor = fields.Float(allow_none=True)
    grid_rows = fields.Int(allow_none=True)


class HeatmapReport(GeneralizedBoundReport):
    config = fields.Nested(HeatmapSchema)


class GammaRowSchema(Schema):
    d = fields.Float()
    gamma = fields.Float()


class GammaCurveReport(Schema):
    config = fields.Nested(GammaCurveSchema)
    rows = fields.List(fields.Nested(GammaRowSchema))


class DMRowSchema(Schema):
    eta_p = fields.Float()
    L_p = fields.Float()
    gamma_p = fields.Float()
    delta_p = fields.Float()
    rho_dm = fields.Float()
    r_dm = fields.Float()
    rho_improved = fields.Float()
    r_improved = fields.Float()
    margin = fields.Float()


class CompareDMReport(Schema):
    config = fields.Nested(CompareDMSchema)
    rows = fields.List(fields.Nested(DMRowSchema))
    all_improved = fields.Bool()


class CurveRowSchema(Schema):
    step = fields.Int()
    estimate = fields.Float()
    stderr = fields.Float()
    bound_value = fields.Float()


class PairCheckSchema(Schema):
    x = fields.Float()
    y = fields.Float()
    psi = fields.Float()
    estimate = fields.Float()
    stderr = fields.Float()
    bound = fields.Float()
    margin = fields.Float()
    passed = fields.Bool()


class ContractionReportSchema(Schema):
    r = fields.Float()
    rho = fields.Float()
    passed = fields.Bool()
    min_margin = fields.Float()
    checks = fields.List(fields.Nested(PairCheckSchema))


class VerifyReport(Schema):
    config = fields.Nested(VerifySchema)
    r = fields.Float()
    rho = fields.Float()
    prefactor = fields.Float()
    curve = fields.List(fields.Nested(CurveRowSchema))
    violations = fields.List(fields.Int())
    log_slope = fields.Float(allow_none=True)
    contraction = fields.Nested(ContractionReportSchema, allow_none=True)
    passed = fields.Bool()


class ContinuousBoundReport(Schema):
    config = fields.Nested(ContinuousBoundSchema)
    value = fields.Float()
    periods = fields.Int()
