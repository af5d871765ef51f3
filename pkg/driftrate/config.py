# -*- coding: utf-8 -*-

import os

DEFAULTS = {
    'DRIFTRATE_GRID_STEP': 0.05,
    'DRIFTRATE_REFINE_LEVELS': 6,
    'DRIFTRATE_TOP_K': 5,
    'DRIFTRATE_R_POINTS': 101,
    'DRIFTRATE_BURN_IN': 1000,
    'DRIFTRATE_SEED': 0,
    'DRIFTRATE_BLOCK_SIZE': 4096,
}


class Config(dict):
    """Settings mapping seeded from `DEFAULTS` and ``DRIFTRATE_*`` environment
    variables. Values keep the type of their default.

    :param dict overrides: (optional) values taking precedence over both
    """

    def __init__(self, overrides=None, environ=None):
        super(Config, self).__init__(DEFAULTS)
        environ = os.environ if environ is None else environ
        for key, default in DEFAULTS.items():
            if key in environ:
                self[key] = type(default)(environ[key])
        self.update(overrides or {})


config = Config()


def get(key, default=None):
    return config.get(key, default)
