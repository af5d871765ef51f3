# -*- coding: utf-8 -*-

import functools
import importlib

import marshmallow as ma

from driftrate.errors import DomainError
from driftrate.generalized import GeneralizedSpec


def resolve_schema(schema, ctx=None):
    if isinstance(schema, type) and issubclass(schema, ma.Schema):
        schema = schema()
    elif callable(schema) and not isinstance(schema, ma.Schema):
        schema = schema(ctx)
    return schema


def resolve_spec(target):
    """Load a `GeneralizedSpec` from an import string ``'package.module:name'``.
    `name` may also be a factory taking no arguments.
    """
    module_name, sep, attr = target.partition(':')
    if not sep or not module_name or not attr:
        raise DomainError('spec must look like "module:attribute", got {!r}'.format(target))
    try:
        module = importlib.import_module(module_name)
    except ImportError as error:
        raise DomainError('cannot import {!r}: {}'.format(module_name, error))
    try:
        spec = functools.reduce(getattr, attr.split('.'), module)
    except AttributeError:
        raise DomainError('{!r} has no attribute {!r}'.format(module_name, attr))
    if callable(spec) and not isinstance(spec, GeneralizedSpec):
        try:
            spec = spec()
        except TypeError as error:
            raise DomainError('cannot build a spec from {!r}: {}'.format(target, error))
    if not isinstance(spec, GeneralizedSpec):
        raise DomainError('{!r} is not a GeneralizedSpec'.format(target))
    return spec


class Annotation(object):

    def __init__(self, options=None):
        self.options = options or []

    def __eq__(self, other):
        if isinstance(other, Annotation):
            return self.options == other.options
        return NotImplemented

    def __ne__(self, other):
        ret = self.__eq__(other)
        return ret if ret is NotImplemented else not ret

    def __repr__(self):
        return 'Annotation({!r})'.format(self.options)

    def merge(self, other):
        return self.__class__(self.options + other.options)


def resolve_annotations(func, key):
    annotations = getattr(func, '__driftrate__', {}).get(key, [])
    return functools.reduce(
        lambda first, second: first.merge(second),
        annotations,
        Annotation(),
    )


def merge_recursive(values):
    return functools.reduce(_merge_recursive, values, {})


def _merge_recursive(child, parent):
    if isinstance(child, dict) or isinstance(parent, dict):
        child = child or {}
        parent = parent or {}
        keys = set(child.keys()).union(parent.keys())
        return {
            key: _merge_recursive(child.get(key), parent.get(key))
            for key in keys
        }
    return child if child is not None else parent
