# -*- coding: utf-8 -*-
"""webargs parser reading command inputs from the active click context.

Values come from the JSON file named by ``--config`` (a bare config, or a
report whose ``config`` member is used), overridden by every flag given on the
command line.
"""

import json
import logging

import click
from webargs import core

logger = logging.getLogger(__name__)

# click parameters handled by the command plumbing, not by the schemas
RESERVED_PARAMS = ('config', 'json_out')


def read_config_file(path):
    try:
        with open(path) as fp:
            data = json.load(fp)
    except (OSError, ValueError) as error:
        raise click.BadParameter(
            'cannot read JSON config {}: {}'.format(path, error), param_hint='--config')
    if not isinstance(data, dict):
        raise click.BadParameter('JSON config must be an object', param_hint='--config')
    if isinstance(data.get('config'), dict):
        data = data['config']
    return data


class ConfigParser(core.Parser):
    """Parser for the ``cli`` location."""

    DEFAULT_LOCATION = 'cli'
    __location_map__ = dict(core.Parser.__location_map__, cli='load_cli')

    def get_default_request(self):
        return click.get_current_context(silent=True)

    def load_cli(self, ctx, schema):
        data = {}
        path = ctx.params.get('config')
        if path:
            data.update(read_config_file(path))
            logger.debug('loaded %d settings from %s', len(data), path)
        data.update({
            key: value for key, value in ctx.params.items()
            if value is not None and key not in RESERVED_PARAMS
        })
        return data

    def handle_error(self, error, req, schema, *, error_status_code, error_headers):
        messages = error.normalized_messages()
        detail = '; '.join(
            '{}: {}'.format(field, ' '.join(_flatten(message)))
            for field, message in sorted(messages.items())
        )
        raise click.UsageError('invalid input: {}'.format(detail), ctx=req)


def _flatten(message):
    if isinstance(message, dict):
        return [item for value in message.values() for item in _flatten(value)]
    if isinstance(message, (list, tuple)):
        return [item for value in message for item in _flatten(value)]
    return [str(message)]


parser = ConfigParser()
