# -*- coding: utf-8 -*-

from driftrate import config

class TestConfig:

    def test_defaults(self):
        settings = config.Config(environ={})
        assert settings == config.DEFAULTS

    def test_environ_keeps_type(self):
        settings = config.Config(environ={
            'DRIFTRATE_GRID_STEP': '0.1',
            'DRIFTRATE_SEED': '42',
            'UNRELATED': 'ignored',
        })
        assert settings['DRIFTRATE_GRID_STEP'] == 0.1
        assert settings['DRIFTRATE_SEED'] == 42
        assert isinstance(settings['DRIFTRATE_SEED'], int)
        assert 'UNRELATED' not in settings

    def test_overrides_win(self):
        settings = config.Config(
            overrides={'DRIFTRATE_TOP_K': 3},
            environ={'DRIFTRATE_TOP_K': '9'},
        )
        assert settings['DRIFTRATE_TOP_K'] == 3

    def test_get(self):
        assert config.get('DRIFTRATE_MISSING', 'fallback') == 'fallback'
