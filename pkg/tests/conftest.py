# -*- coding: utf-8 -*-

import pytest
from click.testing import CliRunner

from driftrate import nar

class Bunch(object):

    def __init__(self, **kwargs):
        self.__dict__.update(**kwargs)

    def items(self):
        return self.__dict__.items()

@pytest.fixture
def runner():
    return CliRunner()

@pytest.fixture
def models():
    return Bunch(
        nar=nar.nar_model(),
        ar1=nar.linear_model(0.5),
    )

@pytest.fixture(scope='session')
def loose_spec():
    return nar.nar_spec('loose')

@pytest.fixture(scope='session')
def tight_spec():
    return nar.nar_spec('tight')
