#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

import pytest

from semiprime_asymptotics.plugin import make_run_config
from semiprime_asymptotics.constants import default_constants_table


@pytest.fixture(scope='session')
def run_config(request):
    return make_run_config(request)


@pytest.fixture(scope='session')
def constants_table(run_config):
    return default_constants_table(10, run_config.precision)
