#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

pytest_plugins = ['semiprime_asymptotics.plugin']
