#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

"""Segmented odd-only sieve of Eratosthenes and the prime counting function

Odd storage: entry ``i`` of the sieve stands for the integer ``2*i + 1``.
The prime 2 is never stored and is accounted for separately.
"""

import logging
import math
import os
import struct
from concurrent.futures import ThreadPoolExecutor

import mpmath
import numpy as np

from semiprime_asymptotics.config import DEFAULT_PRECISION, SieveConfig
from semiprime_asymptotics.util import atomic_write

log = logging.getLogger(__name__)

CACHE_MAGIC = b'SPPT'
CACHE_VERSION = 1
_CACHE_HEADER = struct.Struct('<4sBQQ')

# Requested precisions up to this many digits are summed in binary64
# with exactly rounded accumulation.
FLOAT_DIGITS = 15


class ResourceError(RuntimeError):
    """Raised when a request does not fit the configured resources"""


class UnsortedQueryError(ValueError):
    """Raised when batch queries are not in ascending order"""


class CacheError(ValueError):
    """Raised when a prime cache file is malformed"""


def small_primes(limit):
    """Return all primes <= limit as an int64 array, using a flat sieve"""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _odd_index(y):
    """Index of the last odd entry <= y, or -1 when there is none"""
    if y < 1:
        return -1
    return (y - 1) // 2


def _sieve_segment(lo, hi, base_primes):
    """Primality mask of the odd entries lo <= i < hi"""
    mask = np.ones(hi - lo, dtype=bool)
    if lo == 0:
        mask[0] = False
    n_lo = 2 * lo + 1
    n_hi = 2 * (hi - 1) + 1
    for p in base_primes:
        p2 = p * p
        if p2 > n_hi:
            break
        start = -(-n_lo // p) * p
        if not start & 1:
            start += p
        if start < p2:
            start = p2
        mask[(start - 1) // 2 - lo::p] = False
    return mask


def _segment_primes(lo, mask):
    return 2 * (lo + np.flatnonzero(mask)) + 1


def _check_budget(limit, config):
    if not config.segmented:
        needed = _odd_index(limit) + 1
        if needed > config.memory_budget:
            raise ResourceError(
                'Sieving up to %s without segmentation needs %s bytes, '
                'memory budget is %s; enable segmentation or raise the '
                'budget' % (limit, needed, config.memory_budget))


def iter_prime_segments(limit, config=None):
    """Yield (lo, mask) for consecutive odd-entry segments covering [1, limit]

    Segments come out in ascending order. With config.threads > 1 the
    segments are sieved by a thread pool, a batch at a time, and merged
    in order.
    """
    if config is None:
        config = SieveConfig()
    _check_budget(limit, config)

    top = _odd_index(limit)
    if top < 0:
        return
    total = top + 1
    size = config.segment_size if config.segmented else total
    base = [int(p) for p in small_primes(math.isqrt(limit))[1:]]
    bounds = [(lo, min(lo + size, total)) for lo in range(0, total, size)]
    log.debug('Sieving up to %s in %s segments of %s odd entries',
              limit, len(bounds), size)

    if config.threads <= 1 or len(bounds) == 1:
        for lo, hi in bounds:
            yield lo, _sieve_segment(lo, hi, base)
        return

    with ThreadPoolExecutor(max_workers=config.threads) as executor:
        for start in range(0, len(bounds), config.threads):
            batch = bounds[start:start + config.threads]
            masks = executor.map(
                lambda b: _sieve_segment(b[0], b[1], base), batch)
            for (lo, hi), mask in zip(batch, masks):
                yield lo, mask


class PrimeTable(object):
    """All primes up to an inclusive limit, ascending

    ``primes`` is an int64 numpy array.
    """

    def __init__(self, limit, primes):
        self.limit = int(limit)
        self.primes = np.asarray(primes, dtype=np.int64)

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return (int(p) for p in self.primes)

    def __getitem__(self, index):
        return int(self.primes[index])

    def __eq__(self, other):
        if not isinstance(other, PrimeTable):
            return NotImplemented
        return (self.limit == other.limit and
                np.array_equal(self.primes, other.primes))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return '<%s limit=%s count=%s>' % (
            type(self).__name__, self.limit, len(self))

    def pi(self, y):
        """Number of primes <= y, for y within the table limit"""
        if y > self.limit:
            raise ValueError('%s is beyond the table limit %s' %
                             (y, self.limit))
        return int(np.searchsorted(self.primes, y, side='right'))

    def restricted(self, limit):
        """The table of primes <= limit, for limit <= self.limit"""
        return PrimeTable(limit, self.primes[:self.pi(limit)])

    def to_bytes(self):
        header = _CACHE_HEADER.pack(CACHE_MAGIC, CACHE_VERSION,
                                    self.limit, len(self))
        return header + self.primes.astype('<u8').tobytes()

    @classmethod
    def from_bytes(cls, data):
        if len(data) < _CACHE_HEADER.size:
            raise CacheError('Prime cache is truncated')
        magic, version, limit, count = _CACHE_HEADER.unpack_from(data)
        if magic != CACHE_MAGIC:
            raise CacheError('Not a prime cache file (magic %r)' % magic)
        if version != CACHE_VERSION:
            raise CacheError('Unsupported prime cache version %s' % version)
        body = data[_CACHE_HEADER.size:]
        if len(body) != 8 * count:
            raise CacheError('Prime cache holds %s bytes, expected %s' %
                             (len(body), 8 * count))
        primes = np.frombuffer(body, dtype='<u8').astype(np.int64)
        return cls(limit, primes)

    def save(self, path):
        """Write the binary cache file atomically"""
        atomic_write(path, self.to_bytes())

    @classmethod
    def load(cls, path):
        with open(path, 'rb') as f:
            return cls.from_bytes(f.read())


def primes_up_to(limit, config=None, cache_path=None):
    """Return the PrimeTable of all primes <= limit

    If cache_path names an existing cache with a large enough limit it is
    reused; otherwise the table is computed and written there.
    """
    if limit < 0:
        raise ValueError('limit must be nonnegative, got %s' % limit)
    if config is None:
        config = SieveConfig()

    if cache_path and os.path.exists(cache_path):
        cached = PrimeTable.load(cache_path)
        if cached.limit >= limit:
            log.info('Reusing prime cache %s (limit %s)',
                     cache_path, cached.limit)
            return cached.restricted(limit)

    estimate = 8 * int(1.26 * limit / math.log(limit)) if limit > 2 else 8
    if estimate > config.memory_budget:
        raise ResourceError(
            'A table of primes up to %s needs about %s bytes, memory budget '
            'is %s' % (limit, estimate, config.memory_budget))

    chunks = [np.array([2], dtype=np.int64)] if limit >= 2 else []
    for lo, mask in iter_prime_segments(limit, config):
        chunks.append(_segment_primes(lo, mask))
    if chunks:
        primes = np.concatenate(chunks)
    else:
        primes = np.array([], dtype=np.int64)
    table = PrimeTable(limit, primes)
    log.info('Sieved %s primes up to %s', len(table), limit)

    if cache_path:
        table.save(cache_path)
    return table


def prime_pi(x, config=None):
    """Number of primes <= x"""
    if x < 2:
        return 0
    count = 1
    for lo, mask in iter_prime_segments(x, config):
        count += int(np.count_nonzero(mask))
    return count


def prime_pi_batch(queries, config=None):
    """Evaluate prime_pi at every point of an ascending list in one sweep

    Memory is one segment plus the answers.
    """
    queries = [int(q) for q in queries]
    for a, b in zip(queries, queries[1:]):
        if b < a:
            raise UnsortedQueryError(
                'Queries must be in ascending order (%s before %s)' % (a, b))
    result = [0] * len(queries)
    if not queries or queries[-1] < 2:
        return result

    j = 0
    while queries[j] < 1:
        j += 1
    running = 0
    for lo, mask in iter_prime_segments(queries[-1], config):
        hi = lo + len(mask)
        csum = None
        while j < len(queries) and _odd_index(queries[j]) < hi:
            if csum is None:
                csum = np.cumsum(mask, dtype=np.int64)
            odd_count = running + int(csum[_odd_index(queries[j]) - lo])
            result[j] = odd_count + (1 if queries[j] >= 2 else 0)
            j += 1
        running += int(np.count_nonzero(mask))
    return result


def mertens_log_sum(x, i, precision=DEFAULT_PRECISION, config=None):
    """Sum of (log p)**i / p over primes p <= x, ascending in p

    Precisions up to FLOAT_DIGITS are accumulated from binary64 terms with
    an exactly rounded sum. Higher precisions evaluate one mpmath log per
    prime, which is minutes of work at x = 10**8; use the binary64 path
    unless the extra digits are needed.
    """
    if x < 2:
        raise ValueError('x must be at least 2, got %s' % x)
    if i < 0:
        raise ValueError('i must be nonnegative, got %s' % i)

    if precision <= FLOAT_DIGITS:
        partials = [math.log(2) ** i / 2]
        for lo, mask in iter_prime_segments(x, config):
            p = _segment_primes(lo, mask).astype(np.float64)
            partials.append(math.fsum(np.log(p) ** i / p))
        return mpmath.mpf(math.fsum(partials))

    log.debug('Summing (log p)**%s / p to %s digits up to %s',
              i, precision, x)
    with mpmath.workdps(precision):
        partials = [mpmath.log(2) ** i / 2]
        for lo, mask in iter_prime_segments(x, config):
            partials.append(mpmath.fsum(
                mpmath.log(p) ** i / p
                for p in _segment_primes(lo, mask).tolist()))
        return mpmath.fsum(partials)
