# -*- coding: utf-8 -*-
"""OpenAPI description of the command line: one path per command, whose body
parameter is the command's JSON config schema and whose response is its JSON
report schema.
"""

from apispec import APISpec
from apispec.ext.marshmallow import MarshmallowPlugin
from marshmallow import Schema

from driftrate.paths import command_to_path, command_to_params
from driftrate.utils import resolve_annotations, merge_recursive, resolve_schema


class Converter(object):

    def __init__(self, spec):
        self.spec = spec
        try:
            self.marshmallow_plugin = next(
                plugin for plugin in self.spec.plugins
                if isinstance(plugin, MarshmallowPlugin)
            )
        except StopIteration:
            raise RuntimeError(
                "Must have a MarshmallowPlugin instance in the spec's list "
                'of plugins.'
            )

    def convert(self, command):
        return {
            'path': command_to_path(command),
            'operations': {'post': self.get_operation(command)},
        }

    def get_operation(self, command):
        callback = command.callback
        annotation = resolve_annotations(callback, 'docs')
        docs = merge_recursive(annotation.options)
        operation = {
            'operationId': command.name,
            'summary': (command.help or '').strip().split('\n')[0],
            'responses': self.get_responses(callback),
            'parameters': self.get_parameters(command, callback),
        }
        return merge_recursive([docs, operation])

    def get_parameters(self, command, callback):
        openapi = self.marshmallow_plugin.converter
        annotation = resolve_annotations(callback, 'args')
        body_params = []
        for args in annotation.options:
            schema = args.get('args', {})
            if isinstance(schema, dict):
                schema = Schema.from_dict(schema)
            schema = resolve_schema(schema)
            body_params += openapi.schema2parameters(
                schema, location='body', required=True,
                description='JSON config, also accepted through --config')
        return body_params + command_to_params(command)

    def get_responses(self, callback):
        annotation = resolve_annotations(callback, 'schemas')
        return merge_recursive(annotation.options)


def make_apispec(title='driftrate', version='v1', openapi_version='2.0'):
    return APISpec(
        title=title,
        version=version,
        openapi_version=openapi_version,
        plugins=[MarshmallowPlugin()],
    )


def document(group, spec=None):
    """Register every annotated command of `group` with `spec`.

    :rtype: APISpec
    """
    spec = spec or make_apispec()
    converter = Converter(spec)
    for name in sorted(group.commands):
        command = group.commands[name]
        if not getattr(command.callback, '__driftrate__', None):
            continue
        spec.path(**converter.convert(command))
    return spec
