# -*- coding: utf-8 -*-

import datetime as dt
import os
import sys

sys.path.insert(0, os.path.abspath('..'))
import driftrate  # flake8: noqa

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.viewcode',
]

primary_domain = 'py'
default_role = 'py:obj'

intersphinx_mapping = {
    'python': ('https://python.readthedocs.io/en/latest/', None),
    'marshmallow': ('https://marshmallow.readthedocs.io/en/latest/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'click': ('https://click.palletsprojects.com/', None),
}

source_suffix = '.rst'
master_doc = 'index'
project = 'driftrate'
copyright = 'driftrate contributors {0:%Y}'.format(dt.datetime.utcnow())

version = release = driftrate.__version__

exclude_patterns = ['_build']

# THEME

# on_rtd is whether we are on readthedocs.io
on_rtd = os.environ.get('READTHEDOCS', None) == 'True'

if not on_rtd:  # only import and set the theme if we're building docs locally
    import sphinx_rtd_theme
    html_theme = 'sphinx_rtd_theme'
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
