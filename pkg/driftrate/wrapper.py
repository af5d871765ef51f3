# -*- coding: utf-8 -*-

import json
import logging

import click
from marshmallow import ValidationError

from driftrate import utils
from driftrate.errors import DriftRateError, EXIT_INPUT, EXIT_OK
from driftrate.parser import parser as default_parser

logger = logging.getLogger(__name__)


class Wrapper(object):
    """Apply annotations to a command function.

    The command receives its parsed config and returns a report, optionally
    followed by an exit code. Library errors become their exit codes.

    :param func: Command function to wrap
    """
    parser = default_parser

    def __init__(self, func):
        self.func = func

    def __call__(self, *args, **kwargs):
        ctx = click.get_current_context()
        try:
            unpacked = unpack(self.call_command(ctx))
            report = self.marshal_result(unpacked[0])
        except ValidationError as error:
            return self.fail(error.normalized_messages(), EXIT_INPUT)
        except DriftRateError as error:
            return self.fail(error, error.exit_code)
        self.write_report(ctx, report)
        return unpacked[1] or EXIT_OK

    def call_command(self, ctx):
        args = ()
        for option in utils.resolve_annotations(self.func, 'args').options:
            schema = utils.resolve_schema(option['args'], ctx=ctx)
            args += (self.parser.parse(schema, ctx, location=option['kwargs']['location']), )
        return self.func(*args)

    def marshal_result(self, report):
        annotation = utils.resolve_annotations(self.func, 'schemas')
        schemas = utils.merge_recursive(annotation.options)
        schema = schemas.get('default')
        if schema:
            schema = utils.resolve_schema(schema['schema'])
            return schema.dump(report)
        return report

    def write_report(self, ctx, report):
        path = ctx.params.get('json_out')
        if not path:
            return
        with open(path, 'w') as fp:
            json.dump(report, fp, indent=2, sort_keys=True)
        logger.info('report written to %s', path)

    def fail(self, error, exit_code):
        click.echo('Error: {}'.format(error), err=True)
        return exit_code


def unpack(resp):
    resp = resp if isinstance(resp, tuple) else (resp, )
    return resp + (None, ) * (2 - len(resp))
