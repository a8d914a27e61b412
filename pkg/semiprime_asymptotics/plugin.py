#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

import pytest

from semiprime_asymptotics.config import (
    ConfigError, RunConfig, load_config_file)


def pytest_addoption(parser):
    parser.addoption(
        '--semiprime-config', dest="semiprime_config",
        help="Run configuration (YAML or JSON) for semiprime tests")


def pytest_configure(config):
    config.addinivalue_line(
        'markers', 'slow: desk-scale computations at x = 10^8')
    path = config.getoption('semiprime_config')
    if path:
        try:
            confdict = load_config_file(path)
        except ConfigError as e:
            raise pytest.UsageError('%s\nPlease check path of configuration '
                                    'file and retry.' % e)
        config.pluginmanager.register(RunConfigPlugin(confdict),
                                      'RunConfigPlugin')


class RunConfigPlugin(object):
    """The run configuration plugin

    The plugin is available as pluginmanager.getplugin('RunConfigPlugin'),
    and its presence indicates that a configuration file was given.
    """
    def __init__(self, confdict):
        self.confdict = confdict


def make_run_config(request, config_class=RunConfig, _confdict=None):
    """Create the RunConfig for a test

    :param request: The Pytest request object
    :param config_class: Custom RunConfig class to use
    :param _confdict:
        Configuration dict to be used directly.
        Intended mostly for testing the plugin itself.

    Falls back to the defaults when no configuration file was given.
    """
    if _confdict is None:
        plugin = request.config.pluginmanager.getplugin('RunConfigPlugin')
        _confdict = plugin.confdict if plugin else {}
    try:
        return config_class.from_dict(_confdict)
    except ConfigError as e:
        pytest.fail('Invalid run configuration: %s' % e)
