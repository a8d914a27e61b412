#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

"""Exact counts of semiprimes and k-almost primes

The counting formula expresses pi_k through pi_{k-1}, ..., pi_0 with
pi_0 identically 1.  Evaluation expands it level by level, merging
equal arguments, until only pi_1 terms and constants remain; the pi_1
terms are then answered by a single sieve sweep.
"""

import collections
import functools
import logging
import math

import numpy as np

from semiprime_asymptotics.config import DEFAULT_ORACLE_LIMIT
from semiprime_asymptotics.sieve import (
    ResourceError, prime_pi, prime_pi_batch, primes_up_to)

log = logging.getLogger(__name__)

MAX_K = 64


class AlmostPrimeQuery(object):
    """A request for pi_k(x)"""

    def __init__(self, k, x):
        if k < 0:
            raise ValueError('k must be nonnegative, got %s' % k)
        if x < 0:
            raise ValueError('x must be nonnegative, got %s' % x)
        self.k = int(k)
        self.x = int(x)

    def __repr__(self):
        return '<%s k=%s x=%s>' % (type(self).__name__, self.k, self.x)

    def __eq__(self, other):
        if not isinstance(other, AlmostPrimeQuery):
            return NotImplemented
        return (self.k, self.x) == (other.k, other.x)

    def __hash__(self):
        return hash((self.k, self.x))

    def evaluate(self, config=None):
        return almost_prime_pi(self.k, self.x, config=config)


def integer_root(x, k):
    """Largest r with r**k <= x, in exact integer arithmetic"""
    if x < 0:
        raise ValueError('x must be nonnegative, got %s' % x)
    if k < 1:
        raise ValueError('k must be positive, got %s' % k)
    if k == 1 or x < 2:
        return x
    if k == 2:
        return math.isqrt(x)
    r = int(math.exp(math.log(x) / k))
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def semiprime_pi(x, config=None):
    """Number of m <= x with exactly two prime factors

    Uses (pi(r) - pi(r)**2) / 2 + sum over p <= r of pi(x // p), with
    r = isqrt(x), all pi(x // p) taken from one batched sweep.
    """
    if x < 0:
        raise ValueError('x must be nonnegative, got %s' % x)
    if x < 4:
        return 0
    small = primes_up_to(math.isqrt(x), config)
    count = len(small)
    queries = [x // p for p in reversed(small.primes.tolist())]
    return (count - count * count) // 2 + sum(prime_pi_batch(queries, config))


def _visit_subsets(primes, limit, j, y, coef, pending, start=0, depth=1,
                   product=1):
    """Lexicographic walk over p_1 < ... < p_depth among primes[:limit]

    Subsets of size j are skipped; their count is added in closed form.
    """
    sign = coef if depth % 2 else -coef
    for idx in range(start, limit):
        new_product = product * primes[idx]
        if new_product > y:
            break
        pending[j - depth][y // new_product] += sign
        if depth + 1 < j:
            _visit_subsets(primes, limit, j, y, coef, pending,
                           idx + 1, depth + 1, new_product)


def _expand(k, x, small):
    """Reduce pi_k(x) to (constant, Counter of pi_1 arguments)"""
    pending = collections.defaultdict(collections.Counter)
    pending[k][x] = 1
    constant = 0
    primes = small.primes.tolist()

    for j in range(k, 1, -1):
        level = pending.pop(j, {})
        log.debug('Expanding %s distinct pi_%s arguments', len(level), j)
        for y, coef in sorted(level.items()):
            if coef == 0 or y < 2 ** j:
                continue
            limit = small.pi(integer_root(y, j))
            # All j-subsets of primes <= y**(1/j) have product <= y.
            constant += (-1) ** (j - 1) * coef * math.comb(limit, j)
            _visit_subsets(primes, limit, j, y, coef, pending)

    return constant, pending.pop(1, collections.Counter())


def almost_prime_pi(k, x, config=None):
    """Number of m <= x with exactly k prime factors counted with multiplicity"""
    query = AlmostPrimeQuery(k, x)
    k, x = query.k, query.x
    if k > MAX_K:
        raise ResourceError('k = %s exceeds the supported maximum %s' %
                            (k, MAX_K))
    if k == 0:
        return 1 if x >= 1 else 0
    if k == 1:
        return prime_pi(x, config)
    if x < 2 ** k:
        return 0

    small = primes_up_to(math.isqrt(x), config)
    constant, terms = _expand(k, x, small)
    args = sorted(y for y, coef in terms.items() if coef)
    log.info('pi_%s(%s): %s pi evaluations in one sweep', k, x, len(args))
    counts = prime_pi_batch(args, config)
    return constant + sum(terms[y] * c for y, c in zip(args, counts))


class OmegaSieve(object):
    """Smallest-prime-factor table with Omega(m) for all m <= limit"""

    def __init__(self, limit):
        self.limit = int(limit)
        dtype = np.int32 if self.limit < 2 ** 31 else np.int64
        spf = np.arange(self.limit + 1, dtype=dtype)
        bases = primes_up_to(math.isqrt(self.limit)).primes.tolist()
        # Descending so that the smallest prime factor is written last.
        for p in reversed(bases):
            spf[p * p::p] = p
        self.spf = spf

        omega = np.zeros(self.limit + 1, dtype=np.int8)
        rest = np.arange(self.limit + 1, dtype=dtype)
        active = rest > 1
        while active.any():
            omega[active] += 1
            rest[active] //= spf[rest[active]]
            active = rest > 1
        self.omega_table = omega

    def factorize(self, m):
        """Prime factors of m with multiplicity, ascending"""
        if not 1 <= m <= self.limit:
            raise ValueError('%s is outside 1..%s' % (m, self.limit))
        factors = []
        while m > 1:
            p = int(self.spf[m])
            factors.append(p)
            m //= p
        return factors

    def omega(self, m):
        return int(self.omega_table[m])

    def count(self, k, x):
        """Number of 1 <= m <= x with Omega(m) == k"""
        if x > self.limit:
            raise ValueError('%s is beyond the sieve limit %s' %
                             (x, self.limit))
        if x < 1:
            return 0
        return int(np.count_nonzero(self.omega_table[1:x + 1] == k))


@functools.lru_cache(maxsize=2)
def _omega_sieve(size):
    log.info('Building Omega sieve up to %s', size)
    return OmegaSieve(size)


def omega_count_oracle(k, x, limit=DEFAULT_ORACLE_LIMIT):
    """Count m <= x with Omega(m) == k by explicit factorization

    Independent of the counting-formula path; refuses x above limit.
    """
    if x > limit:
        raise ResourceError('x = %s exceeds the oracle limit %s' % (x, limit))
    if x < 1:
        return 0
    size = max(2 ** 16, 1 << (int(x) - 1).bit_length())
    return _omega_sieve(size).count(k, x)
