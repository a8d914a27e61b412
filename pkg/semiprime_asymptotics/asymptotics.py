#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

"""Truncated asymptotic approximations of pi_2(x) and their errors

The approximant a_n(x) takes (n + 1) // 2 terms of the series
sum_i (i-1)! x loglog x / (log x)**i and n // 2 terms of
sum_i C_{i-1} x / (log x)**i.
"""

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor

import mpmath
import numpy as np

from semiprime_asymptotics.almost_prime import semiprime_pi
from semiprime_asymptotics.config import (
    DEFAULT_DIGITS, DEFAULT_PRECISION, SieveConfig)
from semiprime_asymptotics.constants import (
    PrecisionError, default_constants_table, q_value)
from semiprime_asymptotics.sieve import primes_up_to

log = logging.getLogger(__name__)

DEFAULT_N_MAX = 20
DEFAULT_PER_DECADE = 40
DEFAULT_GRANULARITY = 1000

ROW_FIELDS = ['x', 'n', 'a_n', 'pi2', 'eps_n']

# Coefficients of the probabilistic two-term correction.
# Decimal strings, converted at working precision.
IS_FIRST = '0.265'
IS_SECOND = '1.540'


def _logs(x):
    """(x, log x, log log x) as BigReals; needs x > e"""
    x = mpmath.mpf(x)
    if x <= mpmath.e:
        raise ValueError('x must exceed e, got %s' % mpmath.nstr(x, 10))
    lx = mpmath.log(x)
    return x, lx, mpmath.log(lx)


def alpha_n(x, n, precision=DEFAULT_PRECISION):
    """(x / log x) * sum_{i<n} i! / (log x)**i"""
    if n < 1:
        raise ValueError('n must be positive, got %s' % n)
    with mpmath.workdps(precision):
        x = mpmath.mpf(x)
        if x <= 1:
            raise ValueError('x must exceed 1, got %s' % mpmath.nstr(x, 10))
        lx = mpmath.log(x)
        total = mpmath.fsum(math.factorial(i) / lx ** i for i in range(n))
        return x / lx * total


def landau_pi_k(k, x, precision=DEFAULT_PRECISION):
    """x (loglog x)**(k-1) / ((k-1)! log x)"""
    if k < 1:
        raise ValueError('k must be positive, got %s' % k)
    with mpmath.workdps(precision):
        x, lx, llx = _logs(x)
        return x * llx ** (k - 1) / (math.factorial(k - 1) * lx)


def ishmukhametov_sharifullina(x, precision=DEFAULT_PRECISION):
    """x loglog x / log x + 0.265 x / log x - 1.540 x / (log x)**2"""
    with mpmath.workdps(precision):
        x, lx, llx = _logs(x)
        first, second = mpmath.mpf(IS_FIRST), mpmath.mpf(IS_SECOND)
        return x * llx / lx + first * x / lx - second * x / lx ** 2


def _require_constants(table, count):
    if count > len(table.C):
        raise PrecisionError('Constants table holds C_0..C_%s, C_%s is '
                             'needed' % (len(table.C) - 1, count - 1))


def truncated_sums(ell, x, table=None, precision=DEFAULT_PRECISION):
    """Both series of the expansion cut after ell terms

    Returns (sum_{i<=ell} (i-1)! x loglog x / (log x)**i,
             sum_{i<=ell} C_{i-1} x / (log x)**i).
    """
    return _partial_sums(ell, ell, x, table, precision)


def _partial_sums(n_log, n_const, x, table, precision):
    if table is None:
        table = default_constants_table()
    _require_constants(table, n_const)
    with mpmath.workdps(precision):
        x, lx, llx = _logs(x)
        log_part = mpmath.fsum(math.factorial(i - 1) * x * llx / lx ** i
                               for i in range(1, n_log + 1))
        const_part = mpmath.fsum(table.C[i - 1] * x / lx ** i
                                 for i in range(1, n_const + 1))
        return log_part, const_part


def approximant(n, x, table=None, precision=DEFAULT_PRECISION):
    """a_n(x); a_1 is Landau's x loglog x / log x, a_2 adds M x / log x"""
    if n < 1:
        raise ValueError('n must be positive, got %s' % n)
    log_part, const_part = _partial_sums((n + 1) // 2, n // 2, x, table,
                                         precision)
    with mpmath.workdps(precision):
        return log_part + const_part


def format_value(value, digits=DEFAULT_DIGITS):
    return mpmath.nstr(value, digits, strip_zeros=False)


class ErrorTableRow(object):
    """x, n, a_n(x), pi_2(x) and eps_n = |a_n - pi_2| / pi_2

    Rows compare equal when x, n and pi2 agree and a_n, eps_n agree in
    their decimal representation.
    """

    def __init__(self, x, n, a_n, pi2_exact, eps_n):
        self.x = int(x)
        self.n = int(n)
        self.a_n = a_n
        self.pi2_exact = int(pi2_exact)
        self.eps_n = eps_n

    def __repr__(self):
        return '<%s x=%s n=%s eps_n=%s>' % (
            type(self).__name__, self.x, self.n, format_value(self.eps_n, 8))

    def __eq__(self, other):
        if not isinstance(other, ErrorTableRow):
            return NotImplemented
        return self.to_record() == other.to_record()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    @property
    def label(self):
        return {1: 'Landau', 2: 'Meissel-Mertens'}.get(self.n, '')

    @property
    def overestimates(self):
        return self.a_n > self.pi2_exact

    def to_record(self, digits=DEFAULT_DIGITS):
        return {
            'x': str(self.x),
            'n': str(self.n),
            'a_n': format_value(self.a_n, digits),
            'pi2': str(self.pi2_exact),
            'eps_n': format_value(self.eps_n, digits),
        }

    @classmethod
    def from_record(cls, record, precision=DEFAULT_PRECISION):
        with mpmath.workdps(precision):
            return cls(int(record['x']), int(record['n']),
                       mpmath.mpf(record['a_n']), int(record['pi2']),
                       mpmath.mpf(record['eps_n']))


def _relative(a_n, pi2, precision):
    if pi2 <= 0:
        raise ValueError('pi_2(x) must be positive, got %s' % pi2)
    with mpmath.workdps(precision):
        return abs(a_n - pi2) / pi2


def relative_error(n, x, table=None, precision=DEFAULT_PRECISION,
                   config=None, pi2=None):
    """ErrorTableRow for a_n at x; pi2 may be passed to skip the count"""
    if x < 4:
        raise ValueError('x must be at least 4, got %s' % x)
    if pi2 is None:
        pi2 = semiprime_pi(x, config)
    a_n = approximant(n, x, table, precision)
    return ErrorTableRow(x, n, a_n, pi2, _relative(a_n, pi2, precision))


def even_relative_error(ell, x, pi2, table=None, precision=DEFAULT_PRECISION):
    """eps_{2 ell} from the two series each cut after ell terms"""
    log_part, const_part = truncated_sums(ell, x, table, precision)
    with mpmath.workdps(precision):
        return _relative(log_part + const_part, pi2, precision)


def n_min(x, n_max, table=None, precision=DEFAULT_PRECISION, config=None,
          pi2=None):
    """Order n in 1..n_max with the smallest eps_n(x), smaller n on ties"""
    if n_max < 2:
        raise ValueError('n_max must be at least 2, got %s' % n_max)
    if pi2 is None:
        pi2 = semiprime_pi(x, config)
    best, best_eps = None, None
    for n in range(1, n_max + 1):
        eps = relative_error(n, x, table, precision, pi2=pi2).eps_n
        if best_eps is None or eps < best_eps:
            best, best_eps = n, eps
    return best


def s_n_diagnostic(n, x, precision=DEFAULT_PRECISION):
    """S_n(x) = sum_{p <= sqrt(x)} (1/p) (1 - log p / log x)**(-n)"""
    if n < 1:
        raise ValueError('n must be positive, got %s' % n)
    if x < 4:
        raise ValueError('x must be at least 4, got %s' % x)
    primes = primes_up_to(math.isqrt(x))
    with mpmath.workdps(precision):
        lx = mpmath.log(x)
        return mpmath.fsum((1 - mpmath.log(p) / lx) ** (-n) / p
                           for p in primes)


def s_n_expansion(n, x, ell, table=None, precision=DEFAULT_PRECISION):
    """loglog x + M + q_n + sum_{i<=ell} binom(n+i-1, n-1) B_i / (log x)**i"""
    if table is None:
        table = default_constants_table()
    if ell > table.n_max:
        raise PrecisionError('Constants table holds B_0..B_%s, B_%s is '
                             'needed' % (table.n_max, ell))
    q = q_value(n)
    with mpmath.workdps(precision):
        x, lx, llx = _logs(x)
        total = llx + table.B[0] + mpmath.mpf(q.numerator) / q.denominator
        for i in range(1, ell + 1):
            total += math.comb(n + i - 1, n - 1) * table.B[i] / lx ** i
        return total


def _pi2_values(xs, config):
    if config is None:
        config = SieveConfig()
    if config.threads <= 1 or len(xs) == 1:
        return [semiprime_pi(x, config) for x in xs]
    # Each count owns its sieve sweep; the sieve itself stays serial.
    inner = SieveConfig(config.segment_size, config.memory_budget,
                        config.segmented, threads=1)
    with ThreadPoolExecutor(max_workers=config.threads) as executor:
        return list(executor.map(lambda x: semiprime_pi(x, inner), xs))


def error_table(xs, n_max=DEFAULT_N_MAX, table=None,
                precision=DEFAULT_PRECISION, config=None):
    """Rows for every (x, n), x ascending then n ascending

    pi_2 is counted once per distinct x.
    """
    xs = sorted(set(int(x) for x in xs))
    if not xs:
        raise ValueError('xs must not be empty')
    if xs[0] < 4:
        raise ValueError('x must be at least 4, got %s' % xs[0])
    if table is None:
        table = default_constants_table()
    _require_constants(table, n_max // 2)

    log.info('Counting semiprimes at %s points up to %s', len(xs), xs[-1])
    counts = _pi2_values(xs, config)
    rows = []
    for x, pi2 in zip(xs, counts):
        rows.extend(relative_error(n, x, table, precision, pi2=pi2)
                    for n in range(1, n_max + 1))
    return rows


def locate_sign_change(n, lo, hi, table=None, granularity=DEFAULT_GRANULARITY,
                       precision=DEFAULT_PRECISION, config=None):
    """Bisect for a sign change of a_n(x) - pi_2(x) on [lo, hi]

    Returns (a, b) with hi - lo shrunk to b - a <= granularity and
    opposite signs at a and b.
    """
    def overestimates(x):
        return relative_error(n, x, table, precision, config).overestimates

    lo, hi = int(lo), int(hi)
    if lo >= hi:
        raise ValueError('Empty interval [%s, %s]' % (lo, hi))
    sign_lo = overestimates(lo)
    if overestimates(hi) == sign_lo:
        raise ValueError('a_%s - pi_2 has the same sign at %s and %s' %
                         (n, lo, hi))
    while hi - lo > granularity:
        mid = (lo + hi) // 2
        mid -= mid % granularity
        if mid <= lo:
            mid = lo + granularity
        if mid >= hi:
            break
        if overestimates(mid) == sign_lo:
            lo = mid
        else:
            hi = mid
        log.debug('Sign change of a_%s - pi_2 within [%s, %s]', n, lo, hi)
    return lo, hi


def geometric_grid(lo, hi, per_decade=DEFAULT_PER_DECADE):
    """Integers spaced geometrically from lo to hi, both included"""
    if not 4 <= lo <= hi:
        raise ValueError('Need 4 <= lo <= hi, got %s, %s' % (lo, hi))
    if per_decade < 1:
        raise ValueError('per_decade must be positive, got %s' % per_decade)
    count = int(round(per_decade * math.log10(hi / lo))) + 1
    points = np.rint(np.geomspace(lo, hi, count)).astype(np.int64)
    grid = sorted(set(int(p) for p in points) | set([int(lo), int(hi)]))
    return grid


def rows_to_csv(rows, digits=DEFAULT_DIGITS):
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=ROW_FIELDS, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_record(digits))
    return out.getvalue()


def rows_from_csv(text, precision=DEFAULT_PRECISION):
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != ROW_FIELDS:
        raise ValueError('Unexpected CSV header %s' % reader.fieldnames)
    return [ErrorTableRow.from_record(record, precision) for record in reader]


def rows_to_json(rows, digits=DEFAULT_DIGITS):
    return json.dumps([row.to_record(digits) for row in rows],
                      indent=2, sort_keys=True) + '\n'


def rows_from_json(text, precision=DEFAULT_PRECISION):
    return [ErrorTableRow.from_record(record, precision)
            for record in json.loads(text)]
