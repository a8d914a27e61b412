#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

from semiprime_asymptotics.almost_prime import (
    almost_prime_pi, omega_count_oracle, semiprime_pi)
from semiprime_asymptotics.config import RunConfig, SieveConfig
from semiprime_asymptotics.constants import build_constants_table
from semiprime_asymptotics.sieve import prime_pi, primes_up_to
