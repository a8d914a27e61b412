#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

"""Derivatives of the Riemann zeta function and of its logarithmic derivative

zeta^(k)(s) is the sum of (-log m)**k * m**(-s) over m >= 1, evaluated
by Euler-Maclaurin summation at real s > 1.
"""

import functools
import logging
import math

import mpmath
import numpy as np

from semiprime_asymptotics.config import DEFAULT_PRECISION
from semiprime_asymptotics.sieve import small_primes

log = logging.getLogger(__name__)

# Extra working digits on top of the requested precision.
GUARD_DIGITS = 10

# Upper bound for log zeta(i), i >= 2, is 2**(1-i).
_MERTENS_TAIL = 2


@functools.lru_cache(maxsize=None)
def _bernoulli(n):
    """Exact Bernoulli number B_n as a (numerator, denominator) pair"""
    return mpmath.bernfrac(n)


class ZetaDerivs(object):
    """zeta^(k)(s) for k = 0..K"""

    def __init__(self, s, derivs, precision=DEFAULT_PRECISION):
        self.s = s
        self.derivs = list(derivs)
        self.precision = precision

    @property
    def order(self):
        return len(self.derivs) - 1

    def __getitem__(self, k):
        return self.derivs[k]

    def __repr__(self):
        return '<%s s=%s order=%s>' % (type(self).__name__, self.s,
                                       self.order)


class LogDerivDerivs(object):
    """(zeta'/zeta)^(k)(s) for k = 0..K"""

    def __init__(self, s, vals, precision=DEFAULT_PRECISION):
        self.s = s
        self.vals = list(vals)
        self.precision = precision

    @property
    def order(self):
        return len(self.vals) - 1

    def __getitem__(self, k):
        return self.vals[k]

    def __repr__(self):
        return '<%s s=%s order=%s>' % (type(self).__name__, self.s,
                                       self.order)


def _check_argument(s):
    if s <= 1:
        raise ValueError('zeta derivatives need s > 1, got %s' % s)


def _tail_integral(k, s, cutoff):
    """Integral of (-log t)**k * t**(-s) over [cutoff, oo)"""
    log_n = mpmath.log(cutoff)
    scale = mpmath.mpf(cutoff) ** (1 - s)
    total = mpmath.mpf(0)
    for j in range(k + 1):
        total += (mpmath.mpf(math.factorial(k)) / math.factorial(j) *
                  log_n ** j * scale / (s - 1) ** (k - j + 1))
    return (-1) ** k * total


def _em_tail(k, s, cutoff, eps):
    """Euler-Maclaurin value of the sum over m >= cutoff

    Returns None when the correction terms start growing before they
    drop below eps.
    """
    log_n = mpmath.log(cutoff)
    n = mpmath.mpf(cutoff)
    # f^(d)(t) = t**(-s-d) * P_d(log t); poly[i] is the coefficient of u**i
    poly = [mpmath.mpf(0)] * k + [mpmath.mpf((-1) ** k)]

    def value(d, coeffs):
        return n ** (-s - d) * mpmath.polyval(coeffs[::-1], log_n)

    def step(d, coeffs):
        nxt = [-(s + d) * c for c in coeffs]
        for i in range(1, len(coeffs)):
            nxt[i - 1] += i * coeffs[i]
        return nxt

    total = _tail_integral(k, s, cutoff) + value(0, poly) / 2
    d = 0
    previous = None
    j = 1
    while True:
        while d < 2 * j - 1:
            poly = step(d, poly)
            d += 1
        num, den = _bernoulli(2 * j)
        term = (mpmath.mpf(num) / den / math.factorial(2 * j) *
                value(d, poly))
        size = abs(term)
        total -= term
        if size < eps:
            log.debug('Euler-Maclaurin: k=%s s=%s N=%s depth=%s',
                      k, s, cutoff, j)
            return total
        if previous is not None and size > previous:
            return None
        previous = size
        j += 1


def zeta_derivatives(s, K, precision=DEFAULT_PRECISION, cutoff=None):
    """Return ZetaDerivs with zeta^(k)(s) for k = 0..K

    s may be any real number greater than 1. cutoff is the Euler-Maclaurin
    truncation point; it is doubled as long as the correction series
    stops converging before the error bound is met.
    """
    _check_argument(s)
    if K < 0:
        raise ValueError('K must be nonnegative, got %s' % K)
    if cutoff is None:
        cutoff = max(20, precision)

    with mpmath.workdps(precision + GUARD_DIGITS):
        s = mpmath.mpf(s)
        eps = mpmath.mpf(10) ** (-(precision + GUARD_DIGITS))
        # -log m and m**(-s) for m < n, extended when n doubles
        logs, powers = [], []
        derivs = []
        for k in range(K + 1):
            n = cutoff
            while True:
                tail = _em_tail(k, s, n, eps)
                if tail is not None:
                    break
                n *= 2
            for m in range(len(logs) + 1, n):
                logs.append(-mpmath.log(m))
                powers.append(mpmath.mpf(m) ** (-s))
            head = mpmath.fsum(logs[m] ** k * powers[m] for m in range(n - 1))
            derivs.append(head + tail)
    return ZetaDerivs(s, derivs, precision)


def logderiv_derivatives(s, K, precision=DEFAULT_PRECISION, zeta=None):
    """Return LogDerivDerivs with (zeta'/zeta)^(k)(s) for k = 0..K

    Differentiating zeta' = L * zeta gives
    zeta^(k+1) = sum_j binom(k, j) L^(j) zeta^(k-j), solved for L^(k).
    """
    if zeta is None or zeta.order < K + 1:
        zeta = zeta_derivatives(s, K + 1, precision)
    z = zeta.derivs
    with mpmath.workdps(precision + GUARD_DIGITS):
        vals = []
        for k in range(K + 1):
            acc = z[k + 1]
            for j in range(k):
                acc -= math.comb(k, j) * vals[j] * z[k - j]
            vals.append(acc / z[0])
    return LogDerivDerivs(zeta.s, vals, precision)


def mobius(n):
    """Moebius function of n >= 1"""
    if n < 1:
        raise ValueError('mobius is defined for n >= 1, got %s' % n)
    result = 1
    for p in small_primes(math.isqrt(n)).tolist():
        if p * p > n:
            break
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
    if n > 1:
        result = -result
    return result


def mobius_upto(n):
    """int8 array mu with mu[i] the Moebius function of i, mu[0] = 0"""
    mu = np.ones(n + 1, dtype=np.int8)
    mu[0] = 0
    for p in small_primes(n).tolist():
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    return mu


def mobius_cutoff(precision, bound):
    """First i >= 2 from which bound(i) stays below 10**-(precision + 5)

    bound must be decreasing for large i.
    """
    eps = mpmath.mpf(10) ** (-(precision + 5))
    i = 2
    while bound(i) >= eps:
        i += 1
    return i


def meissel_mertens(precision=DEFAULT_PRECISION, gamma0=None):
    """M = gamma_0 + sum over i >= 2 of mu(i) log zeta(i) / i

    gamma0 defaults to the Euler-Mascheroni constant at working precision.
    """
    with mpmath.workdps(precision + GUARD_DIGITS):
        i_max = mobius_cutoff(
            precision, lambda i: mpmath.mpf(_MERTENS_TAIL) ** (1 - i) / i)
        log.debug('Meissel-Mertens series cut at i = %s', i_max)
        mu = mobius_upto(i_max)
        total = mpmath.euler if gamma0 is None else mpmath.mpf(gamma0)
        terms = []
        for i in range(2, i_max + 1):
            if mu[i]:
                zeta_i = zeta_derivatives(i, 0, precision)[0]
                terms.append(int(mu[i]) * mpmath.log(zeta_i) / i)
        total = total + mpmath.fsum(terms)
    return total
