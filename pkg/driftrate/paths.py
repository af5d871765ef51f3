# -*- coding: utf-8 -*-

import click

from driftrate.parser import RESERVED_PARAMS


def command_to_path(command):
    return '/{}'.format(command.name)


TYPE_MAPPING = {
    click.types.IntParamType: ('integer', 'int32'),
    click.types.IntRange: ('integer', 'int32'),
    click.types.FloatParamType: ('number', 'float'),
    click.types.FloatRange: ('number', 'float'),
    click.types.BoolParamType: ('boolean', None),
}

DEFAULT_TYPE = ('string', None)


def command_to_params(command):
    """Command-line options of `command` as OpenAPI query parameters, named
    after their flags.
    """
    return [
        option_to_param(param)
        for param in command.params
        if isinstance(param, click.Option) and param.name not in ('help', )
    ]


def option_to_param(option):
    param = {
        'in': 'query',
        'name': max(option.opts, key=len),
        'required': bool(option.required),
        'description': option.help or '',
    }
    type_, format_ = TYPE_MAPPING.get(type(option.type), DEFAULT_TYPE)
    param['type'] = type_
    if format_ is not None:
        param['format'] = format_
    if isinstance(option.type, click.Choice):
        param['enum'] = list(option.type.choices)
    if option.name in RESERVED_PARAMS:
        param['x-reserved'] = True
    return param
