# -*- coding: utf-8 -*-

import re
from setuptools import setup
from setuptools import find_packages

REQUIRES = [
    'numpy>=1.22',
    'scipy>=1.8',
    'marshmallow>=3.13.0',
    'webargs>=8.0.0',
    'apispec>=6.0.0',
    'click>=8.0',
]

def find_version(fname):
    """Attempts to find the version number in the file names fname.
    Raises RuntimeError if not found.
    """
    version = ''
    with open(fname, 'r') as fp:
        reg = re.compile(r'__version__ = [\'"]([^\'"]*)[\'"]')
        for line in fp:
            m = reg.match(line)
            if m:
                version = m.group(1)
                break
    if not version:
        raise RuntimeError('Cannot find version information')
    return version

def read(fname):
    with open(fname) as fp:
        content = fp.read()
    return content


setup(
    name='driftrate',
    version=find_version('driftrate/__init__.py'),
    description='Geometric convergence rate bounds for Markov chains from drift and '
                'contraction conditions',
    long_description=read('README.rst'),
    packages=find_packages(exclude=('test*', )),
    package_dir={'driftrate': 'driftrate'},
    include_package_data=True,
    install_requires=REQUIRES,
    python_requires='>=3.8',
    entry_points={
        'console_scripts': ['driftrate = driftrate.cli:main'],
    },
    license='MIT',
    zip_safe=False,
    keywords='markov chain wasserstein convergence drift contraction',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    test_suite='tests',
)
