# -*- coding: utf-8 -*-

import functools

from driftrate import utils
from driftrate.wrapper import Wrapper


def use_kwargs(args, location=None, **kwargs):
    """Inject the command config parsed from the specified schema into the
    decorated command function.

    Usage:

    .. code-block:: python

        @cli.command('continuous-bound')
        @click.option('--rho', type=float)
        @use_kwargs(ContinuousBoundSchema)
        def continuous_bound(run):
            return {'config': run, 'value': ...}

    :param args: Mapping of argument names to :class:`Field <marshmallow.fields.Field>`
        objects, :class:`Schema <marshmallow.Schema>`, or a callable which accepts a
        click context and returns a :class:`Schema <marshmallow.Schema>`
    :param location: Parser location, ``'cli'`` by default
    """
    kwargs.update({'location': location})

    def wrapper(func):
        options = {
            'args': args,
            'kwargs': kwargs,
        }
        annotate(func, 'args', [options])
        return activate(func)
    return wrapper


def marshal_with(schema, description=''):
    """Dump the report returned by the decorated command with the specified
    schema. The dumped report is written to ``--json-out`` when given.

    :param schema: :class:`Schema <marshmallow.Schema>` class or instance, or `None`
    :param description: Optional report description
    """
    def wrapper(func):
        options = {
            'default': {
                'schema': schema or {},
                'description': description,
            },
        }
        annotate(func, 'schemas', [options])
        return activate(func)
    return wrapper


def doc(**kwargs):
    """Annotate the decorated command with the specified OpenAPI attributes.

    Usage:

    .. code-block:: python

        @doc(tags=['bounds'], summary='standard drift/contraction bound')
        def standard_bound(run):
            ...
    """
    def wrapper(func):
        annotate(func, 'docs', [kwargs])
        return activate(func)
    return wrapper


def annotate(func, key, options):
    annotation = utils.Annotation(options)
    func.__driftrate__ = func.__dict__.get('__driftrate__', {})
    func.__driftrate__.setdefault(key, []).insert(0, annotation)


def activate(func):
    if getattr(func, '__driftrate__', {}).get('wrapped'):
        return func

    @functools.wraps(func)
    def wrapped(*args, **kwargs):
        return Wrapper(func)(*args, **kwargs)

    wrapped.__driftrate__['wrapped'] = True
    return wrapped
