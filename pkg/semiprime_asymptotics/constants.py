#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

"""The constants B_n and C_n of the semiprime asymptotic series

B_0 = C_0 is the Meissel-Mertens constant. For n >= 1, B_n is a Moebius
weighted series over derivatives of zeta'/zeta at the integers i >= 2,
plus a limit term taken from the regularized Laurent series of zeta'/zeta
at s = 1.
"""

import csv
import fractions
import functools
import io
import json
import logging
import math

import mpmath

from semiprime_asymptotics.config import DEFAULT_DIGITS, DEFAULT_PRECISION
from semiprime_asymptotics.highprec_series import (
    TruncatedSeries, series_log_derivative, series_mul)
from semiprime_asymptotics.zeta_engine import (
    GUARD_DIGITS, logderiv_derivatives, meissel_mertens, mobius_cutoff,
    mobius_upto)

log = logging.getLogger(__name__)

DEFAULT_N_MAX = 10
MAX_N_MAX = 20

# Values with |v| >= 10**SCIENTIFIC_EXPONENT are written in scientific form.
SCIENTIFIC_EXPONENT = 3

CSV_HEADER = ['n', 'B_n', 'C_n']


class PrecisionError(ValueError):
    """Raised when a request exceeds the precision or size of the input data"""


class StieltjesTable(object):
    """Stieltjes constants gamma_0..gamma_N known to source_precision digits"""

    def __init__(self, gammas, source_precision):
        self.gammas = list(gammas)
        self.source_precision = int(source_precision)

    @classmethod
    def compute(cls, N, precision=DEFAULT_PRECISION):
        """Evaluate gamma_0..gamma_N with mpmath.stieltjes"""
        return _stieltjes_table(int(N), int(precision))

    @property
    def N(self):
        return len(self.gammas) - 1

    def __len__(self):
        return len(self.gammas)

    def __getitem__(self, n):
        return self.gammas[n]

    def __repr__(self):
        return '<%s N=%s source_precision=%s>' % (
            type(self).__name__, self.N, self.source_precision)

    def require(self, N, precision):
        """Raise PrecisionError unless the table covers gamma_N at precision"""
        if N > self.N:
            raise PrecisionError('Stieltjes table stops at gamma_%s, '
                                 'gamma_%s is needed' % (self.N, N))
        if precision > self.source_precision:
            raise PrecisionError(
                'Stieltjes table is accurate to %s digits, %s requested' %
                (self.source_precision, precision))


@functools.lru_cache(maxsize=8)
def _stieltjes_table(N, precision):
    log.info('Computing Stieltjes constants gamma_0..gamma_%s at %s digits',
             N, precision)
    with mpmath.workdps(precision + GUARD_DIGITS):
        gammas = [mpmath.stieltjes(n) for n in range(N + 1)]
    return StieltjesTable(gammas, precision)


def zeta_laurent_series(N, stieltjes):
    """zeta(s) = 1/(s-1) + sum_j (-1)**j gamma_j / j! (s-1)**j, to order N"""
    stieltjes.require(N, 0)
    coeffs = [(-1) ** j * stieltjes[j] / math.factorial(j)
              for j in range(N + 1)]
    return TruncatedSeries(coeffs, N, pole_part=1)


def regularized_logderiv_series(N, stieltjes=None, precision=DEFAULT_PRECISION):
    """Taylor series at s = 1 of zeta'/zeta + 1/(s-1) to order N

    With u = (s-1) zeta(s), which has no pole, the series is u'/u.
    """
    if stieltjes is None:
        stieltjes = StieltjesTable.compute(N + 1, precision)
    stieltjes.require(N + 1, precision)
    with mpmath.workdps(precision + GUARD_DIGITS):
        zeta = zeta_laurent_series(N + 1, stieltjes)
        unit = series_mul(zeta, TruncatedSeries.variable(N + 2))
        return series_log_derivative(unit)


def _mobius_bound(n):
    """Upper bound for |i**(n-1) L^(n-1)(i)| at large i"""
    log3 = mpmath.log(3)

    def bound(i):
        return 4 * mpmath.mpf(i) ** (n - 1) * log3 ** n / mpmath.mpf(2) ** i
    return bound


class _LogDerivCache(object):
    """(zeta'/zeta)^(k)(i) for squarefree i, computed once per i"""

    def __init__(self, K, precision):
        self.K = K
        self.precision = precision
        self._values = {}

    def __call__(self, i):
        if i not in self._values:
            self._values[i] = logderiv_derivatives(i, self.K, self.precision)
        return self._values[i]


def _mobius_series(n, precision, logderivs):
    """sum over i >= 2 of mu(i) i**(n-1) L^(n-1)(i)"""
    i_max = mobius_cutoff(precision, _mobius_bound(n))
    log.debug('Moebius series for B_%s cut at i = %s', n, i_max)
    mu = mobius_upto(i_max)
    terms = []
    for i in range(2, i_max + 1):
        if mu[i]:
            terms.append(int(mu[i]) * mpmath.mpf(i) ** (n - 1) *
                         logderivs(i)[n - 1])
    return mpmath.fsum(terms)


def compute_B(n, precision=DEFAULT_PRECISION, stieltjes=None,
              logderivs=None, laurent=None):
    """B_n to `precision` significant digits

    For n = 0 this is the Meissel-Mertens constant. For n >= 1,
    B_n = (-1)**n (sum_{i>=2} mu(i) i**(n-1) L^(n-1)(i) + (n-1)! c_{n-1})
    with L = zeta'/zeta and c_j the coefficients of
    regularized_logderiv_series.
    """
    if n < 0:
        raise ValueError('n must be nonnegative, got %s' % n)
    if stieltjes is None:
        stieltjes = StieltjesTable.compute(max(n, 1) + 1, precision)
    stieltjes.require(0, precision)

    if n == 0:
        return meissel_mertens(precision, gamma0=stieltjes[0])

    if laurent is None or laurent.order < n - 1:
        laurent = regularized_logderiv_series(n - 1, stieltjes, precision)
    if logderivs is None:
        logderivs = _LogDerivCache(n - 1, precision)

    with mpmath.workdps(precision + GUARD_DIGITS):
        series = _mobius_series(n, precision, logderivs)
        limit = math.factorial(n - 1) * laurent[n - 1]
        return (-1) ** n * (series + limit)


def harmonic_number(n):
    """H_n as an exact rational"""
    return sum((fractions.Fraction(1, i) for i in range(1, n + 1)),
               fractions.Fraction(0))


def compute_C(n, B, precision=DEFAULT_PRECISION):
    """C_n = n! (sum_{i<=n} B_i / i! - H_n) from B_0..B_n"""
    if len(B) < n + 1:
        raise PrecisionError('C_%s needs B_0..B_%s, got %s values' %
                             (n, n, len(B)))
    if n == 0:
        return B[0]
    with mpmath.workdps(precision + GUARD_DIGITS):
        h = harmonic_number(n)
        partial = mpmath.fsum(B[i] / math.factorial(i) for i in range(n + 1))
        partial -= mpmath.mpf(h.numerator) / h.denominator
        return math.factorial(n) * partial


def q_value(n):
    """q_1 = 0 and q_n = sum_{i=1}^{n-1} (2**i - 1) / i, exactly"""
    if n < 1:
        raise ValueError('q is defined for n >= 1, got %s' % n)
    return sum((fractions.Fraction(2 ** i - 1, i) for i in range(1, n)),
               fractions.Fraction(0))


def q_identity_residual(n, terms, precision=60):
    """|sum_{i<=terms} binom(n+i-1, n-1) / (i 2**i) - (q_n + log 2)|

    The partial sum is formed exactly before conversion.
    """
    if n < 1 or terms < 1:
        raise ValueError('n and terms must be positive, got %s, %s' %
                         (n, terms))
    partial = sum((fractions.Fraction(math.comb(n + i - 1, n - 1), i * 2 ** i)
                   for i in range(1, terms + 1)), fractions.Fraction(0))
    difference = partial - q_value(n)
    with mpmath.workdps(precision + GUARD_DIGITS):
        value = mpmath.mpf(difference.numerator) / difference.denominator
        return abs(value - mpmath.log(2))


def format_constant(value, digits=DEFAULT_DIGITS):
    """Decimal string with `digits` significant digits

    Scientific form such as -1.5111997871316530251e+3 is used from
    |value| >= 1000 on.
    """
    return mpmath.nstr(value, digits, strip_zeros=False,
                       max_fixed=SCIENTIFIC_EXPONENT)


class ConstantsTable(object):
    """B_n, C_n, q_n and H_n for n = 0..n_max

    q[0] is set to 0; q and H are exact rationals.
    """

    def __init__(self, B, C, q, H, precision, source=''):
        self.B = list(B)
        self.C = list(C)
        self.q = list(q)
        self.H = list(H)
        self.precision = precision
        self.source = source

    @property
    def n_max(self):
        return len(self.B) - 1

    def __repr__(self):
        return '<%s n_max=%s precision=%s>' % (
            type(self).__name__, self.n_max, self.precision)

    @property
    def M(self):
        return self.B[0]

    def to_rows(self, digits=DEFAULT_DIGITS):
        """(n, B_n, C_n) with decimal strings"""
        return [(n, format_constant(b, digits), format_constant(c, digits))
                for n, (b, c) in enumerate(zip(self.B, self.C))]

    def to_csv(self, digits=DEFAULT_DIGITS):
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(CSV_HEADER)
        writer.writerows(self.to_rows(digits))
        return out.getvalue()

    def to_json(self, digits=DEFAULT_DIGITS):
        rows = [dict(zip(CSV_HEADER, row)) for row in self.to_rows(digits)]
        return json.dumps({'precision': self.precision,
                           'digits': digits,
                           'source': self.source,
                           'constants': rows},
                          indent=2, sort_keys=True) + '\n'


def build_constants_table(n_max=DEFAULT_N_MAX, precision=DEFAULT_PRECISION,
                          stieltjes=None):
    """Compute B_0..B_{n_max} and C_0..C_{n_max}

    Derivatives of zeta'/zeta are computed once per i and shared by all n.
    """
    if not 0 <= n_max <= MAX_N_MAX:
        raise PrecisionError('n_max must be between 0 and %s, got %s' %
                             (MAX_N_MAX, n_max))
    if stieltjes is None:
        stieltjes = StieltjesTable.compute(n_max + 1, precision)
    stieltjes.require(0, precision)
    log.info('Building constants table for n <= %s at %s digits',
             n_max, precision)

    K = max(n_max - 1, 0)
    logderivs = _LogDerivCache(K, precision)
    laurent = regularized_logderiv_series(K, stieltjes, precision)
    B = [compute_B(n, precision, stieltjes, logderivs, laurent)
         for n in range(n_max + 1)]
    C = [compute_C(n, B, precision) for n in range(n_max + 1)]
    q = [fractions.Fraction(0)] + [q_value(n) for n in range(1, n_max + 2)]
    H = [harmonic_number(n) for n in range(n_max + 1)]
    source = 'mpmath.stieltjes gamma_0..gamma_%s' % stieltjes.N
    return ConstantsTable(B, C, q, H, precision, source)


@functools.lru_cache(maxsize=4)
def default_constants_table(n_max=DEFAULT_N_MAX, precision=DEFAULT_PRECISION):
    """Process-wide cached table"""
    return build_constants_table(n_max, precision)
