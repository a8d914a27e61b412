#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

"""Command-line interface

Usage:
    semiprime count pi2 10^8          # exact semiprime count
    semiprime count pik --k 3 1000    # 3-almost primes up to 1000
    semiprime constants --n-max 10    # B_n and C_n
    semiprime errors 10^6 10^8        # relative errors of a_n
    semiprime crossing                # where a_2 - pi_2 changes sign
    semiprime bench --limit 10^8      # sieve throughput and peak memory

Every option of the command group can also be set through an environment
variable with the SEMIPRIME_ prefix, e.g. SEMIPRIME_PRECISION=60.
"""

import functools
import json
import logging
import re
import time
import tracemalloc

import click

from semiprime_asymptotics.almost_prime import (
    almost_prime_pi, omega_count_oracle, semiprime_pi)
from semiprime_asymptotics.asymptotics import (
    DEFAULT_GRANULARITY, DEFAULT_PER_DECADE, error_table, geometric_grid,
    locate_sign_change, rows_to_csv, rows_to_json)
from semiprime_asymptotics.config import (
    OUTPUT_FORMATS, ConfigError, RunConfig, load_config_file)
from semiprime_asymptotics.constants import (
    DEFAULT_N_MAX, build_constants_table, default_constants_table)
from semiprime_asymptotics.sieve import ResourceError, prime_pi
from semiprime_asymptotics.util import atomic_write

log = logging.getLogger(__name__)

ENVVAR_PREFIX = 'SEMIPRIME'

EXIT_RESOURCE = 3
EXIT_VERIFICATION = 4

_POWER = re.compile(r'^(\d+)\s*(?:\^|\*\*)\s*(\d+)$')
_SCIENTIFIC = re.compile(r'^(\d+)[eE](\d+)$')


class VerificationError(RuntimeError):
    """Raised when a count disagrees with the factorization oracle"""


class ResourceExit(click.ClickException):
    exit_code = EXIT_RESOURCE


class VerificationExit(click.ClickException):
    exit_code = EXIT_VERIFICATION


def parse_integer(text):
    """Parse 1000000, 1_000_000, 10^6, 10**6 or 1e6 to an int"""
    text = text.strip().replace('_', '')
    match = _POWER.match(text)
    if match:
        return int(match.group(1)) ** int(match.group(2))
    match = _SCIENTIFIC.match(text)
    if match:
        return int(match.group(1)) * 10 ** int(match.group(2))
    return int(text)


class IntegerType(click.ParamType):
    name = 'integer'

    def convert(self, value, param, ctx):
        if isinstance(value, int):
            return value
        try:
            return parse_integer(value)
        except ValueError:
            self.fail('%r is not an integer' % value, param, ctx)


class RangeType(click.ParamType):
    """LO:HI with both ends integers"""
    name = 'range'

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        lo, sep, hi = value.partition(':')
        try:
            if not sep:
                raise ValueError(value)
            return parse_integer(lo), parse_integer(hi)
        except ValueError:
            self.fail('%r is not a LO:HI range' % value, param, ctx)


INTEGER = IntegerType()
RANGE = RangeType()


def handle_errors(func):
    """Map library exceptions to the documented exit codes"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ResourceError as e:
            raise ResourceExit(str(e))
        except VerificationError as e:
            raise VerificationExit(str(e))
        except ValueError as e:
            # ConfigError, PrecisionError and argument validation
            raise click.UsageError(str(e))
    return wrapper


def emit(run_config, text):
    """Write command output to --out atomically, or to stdout"""
    if run_config.output_path:
        atomic_write(run_config.output_path, text)
        log.info('Wrote %s', run_config.output_path)
    else:
        click.echo(text, nl=False)


def _setup_logging(verbose):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(
        level=level, format='%(asctime)s %(name)s %(levelname)s %(message)s')


@click.group(context_settings={'auto_envvar_prefix': ENVVAR_PREFIX})
@click.option('--config', 'config_path',
              type=click.Path(exists=True, dir_okay=False),
              help='YAML or JSON run configuration.')
@click.option('--precision', type=int, help='Working precision in digits.')
@click.option('--digits', type=int, help='Reported significant digits.')
@click.option('--threads', type=int, help='Worker threads.')
@click.option('--memory', 'memory_budget', type=INTEGER,
              help='Sieve memory budget in bytes.')
@click.option('--oracle-limit', type=INTEGER,
              help='Largest x accepted by the factorization oracle.')
@click.option('--format', 'output_format', type=click.Choice(OUTPUT_FORMATS),
              help='Output format.')
@click.option('--out', 'output_path', type=click.Path(dir_okay=False),
              help='Write output to this file instead of stdout.')
@click.option('-v', '--verbose', count=True, help='More logging.')
@click.pass_context
def cli(ctx, config_path, verbose, **overrides):
    """Semiprime counts, asymptotic constants and error tables"""
    _setup_logging(verbose)
    try:
        confdict = load_config_file(config_path) if config_path else {}
        ctx.obj = RunConfig.from_dict(confdict).updated(**overrides)
    except ConfigError as e:
        raise click.UsageError(str(e))


@cli.command()
@click.argument('kind', type=click.Choice(['pi', 'pi2', 'pik']))
@click.argument('x', type=INTEGER)
@click.option('--k', type=int, help='Number of prime factors (pik only).')
@click.option('--verify', is_flag=True,
              help='Cross-check against the factorization oracle.')
@click.pass_obj
@handle_errors
def count(run_config, kind, x, k, verify):
    """Print pi(x), pi_2(x) or pi_k(x)"""
    if (kind == 'pik') != (k is not None):
        raise click.UsageError('--k is required for pik and only for pik')
    if x < 0:
        raise click.BadParameter('x must be nonnegative', param_hint='x')
    k = {'pi': 1, 'pi2': 2}.get(kind, k)
    sieve = run_config.sieve
    if kind == 'pi':
        result = prime_pi(x, sieve)
    elif kind == 'pi2':
        result = semiprime_pi(x, sieve)
    else:
        result = almost_prime_pi(k, x, sieve)

    verified = None
    if verify:
        if x <= run_config.oracle_limit:
            expected = omega_count_oracle(k, x, run_config.oracle_limit)
            if expected != result:
                raise VerificationError(
                    'pi_%s(%s): counting formula gives %s, oracle gives %s' %
                    (k, x, result, expected))
            verified = True
            click.echo('verified: oracle agrees', err=True)
        else:
            verified = False
            click.echo('not verified: x exceeds the oracle limit %s' %
                       run_config.oracle_limit, err=True)

    if run_config.output_format == 'json':
        record = {'kind': kind, 'k': k, 'x': x, 'count': result}
        if verify:
            record['verified'] = verified
        emit(run_config, json.dumps(record, sort_keys=True) + '\n')
    else:
        emit(run_config, '%s\n' % result)


@cli.command()
@click.option('--n-max', type=int, default=DEFAULT_N_MAX, show_default=True,
              help='Largest n in the table.')
@click.option('--digits', type=int, default=None,
              help='Significant digits, overrides the global setting.')
@click.pass_obj
@handle_errors
def constants(run_config, n_max, digits):
    """Compute B_n and C_n for n = 0..n_max"""
    if digits is not None:
        run_config = run_config.updated(digits=digits)
    table = build_constants_table(n_max, run_config.precision)
    if run_config.output_format == 'json':
        emit(run_config, table.to_json(run_config.digits))
    else:
        emit(run_config, table.to_csv(run_config.digits))


@cli.command()
@click.argument('xs', nargs=-1, type=INTEGER)
@click.option('--grid', type=RANGE, default=None,
              help='Geometric grid LO:HI instead of explicit x values.')
@click.option('--per-decade', type=int, default=DEFAULT_PER_DECADE,
              show_default=True, help='Grid points per decade.')
@click.option('--n-max', type=int, default=20, show_default=True,
              help='Largest approximation order.')
@click.pass_obj
@handle_errors
def errors(run_config, xs, grid, per_decade, n_max):
    """Relative errors eps_n(x) of the approximations a_n(x)"""
    xs = list(xs)
    if grid:
        xs.extend(geometric_grid(grid[0], grid[1], per_decade))
    if not xs:
        raise click.UsageError('Give x values or --grid LO:HI')
    if n_max < 1:
        raise click.BadParameter('must be positive', param_hint='--n-max')
    table = default_constants_table(max(DEFAULT_N_MAX, n_max // 2),
                                    run_config.precision)
    rows = error_table(xs, n_max, table, run_config.precision,
                       run_config.sieve)
    if run_config.output_format == 'json':
        emit(run_config, rows_to_json(rows, run_config.digits))
    else:
        emit(run_config, rows_to_csv(rows, run_config.digits))


@cli.command()
@click.option('--n', 'order', type=int, default=2, show_default=True,
              help='Approximation order.')
@click.option('--lo', type=INTEGER, default=2 * 10 ** 5, show_default=True)
@click.option('--hi', type=INTEGER, default=3 * 10 ** 5, show_default=True)
@click.option('--granularity', type=INTEGER, default=DEFAULT_GRANULARITY,
              show_default=True)
@click.pass_obj
@handle_errors
def crossing(run_config, order, lo, hi, granularity):
    """Bracket a sign change of a_n(x) - pi_2(x)"""
    table = default_constants_table(DEFAULT_N_MAX, run_config.precision)
    a, b = locate_sign_change(order, lo, hi, table, granularity,
                              run_config.precision, run_config.sieve)
    if run_config.output_format == 'json':
        emit(run_config, json.dumps({'n': order, 'lo': a, 'hi': b},
                                    sort_keys=True) + '\n')
    else:
        emit(run_config, 'n,lo,hi\n%s,%s,%s\n' % (order, a, b))


@cli.command()
@click.option('--limit', type=INTEGER, default=10 ** 8, show_default=True)
@click.pass_obj
@handle_errors
def bench(run_config, limit):
    """Measure sieve throughput and peak memory for pi(limit)"""
    tracemalloc.start()
    try:
        start = time.perf_counter()
        result = prime_pi(limit, run_config.sieve)
        elapsed = time.perf_counter() - start
        peak = tracemalloc.get_traced_memory()[1]
    finally:
        tracemalloc.stop()
    record = {
        'limit': limit,
        'pi': result,
        'seconds': round(elapsed, 3),
        'per_second': int(limit / elapsed) if elapsed else 0,
        'peak_bytes': peak,
        'segment_size': run_config.sieve.segment_size,
        'threads': run_config.sieve.threads,
    }
    if run_config.output_format == 'json':
        emit(run_config, json.dumps(record, sort_keys=True) + '\n')
    else:
        keys = sorted(record)
        emit(run_config, '%s\n%s\n' % (
            ','.join(keys), ','.join(str(record[key]) for key in keys)))


def main():
    cli(prog_name='semiprime')
