#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

import math
import random

import mpmath
import numpy as np
import pytest

from semiprime_asymptotics.config import SieveConfig
from semiprime_asymptotics.sieve import (
    CacheError, PrimeTable, ResourceError, UnsortedQueryError,
    iter_prime_segments, mertens_log_sum, prime_pi, prime_pi_batch,
    primes_up_to, small_primes)

B1 = mpmath.mpf('-1.3325822757332208817')

# Smallest segment allowed, so that small limits span many segments.
TINY = SieveConfig(segment_size=2 ** 10, memory_budget=2 ** 20)


def is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@pytest.fixture(scope='module')
def trial_counts():
    """Trial-division prime counts for every x <= 10^5"""
    flags = [is_prime(n) for n in range(10 ** 5 + 1)]
    return np.cumsum(flags)


def test_empty_table():
    assert list(primes_up_to(0)) == []
    assert list(primes_up_to(1)) == []


def test_first_primes():
    assert list(primes_up_to(10)) == [2, 3, 5, 7]
    assert list(primes_up_to(2)) == [2]


def test_table_one_million():
    table = primes_up_to(10 ** 6, TINY)
    assert len(table) == 78498
    assert table[0] == 2
    assert table[-1] == 999983
    assert np.all(np.diff(table.primes) > 0)


def test_table_matches_trial_division():
    table = primes_up_to(5000, TINY)
    assert list(table) == [n for n in range(5001) if is_prime(n)]


def test_segmented_matches_flat():
    flat = SieveConfig(segmented=False)
    assert primes_up_to(300000, TINY) == primes_up_to(300000, flat)
    assert list(primes_up_to(300000, TINY)) == small_primes(300000).tolist()


def test_restriction():
    big = primes_up_to(20000)
    for m in (0, 1, 2, 97, 100, 19997, 20000):
        assert big.restricted(m) == primes_up_to(m)


def test_table_pi():
    table = primes_up_to(100)
    assert table.pi(1) == 0
    assert table.pi(2) == 1
    assert table.pi(97) == 25
    assert table.pi(100) == 25
    with pytest.raises(ValueError):
        table.pi(101)


def test_cache_roundtrip(tmpdir):
    path = str(tmpdir.join('primes.bin'))
    table = primes_up_to(10 ** 5, cache_path=path)
    loaded = PrimeTable.load(path)
    assert loaded == table
    with open(path, 'rb') as f:
        assert f.read() == table.to_bytes()
    # A smaller request is served from the cache.
    assert primes_up_to(1000, cache_path=path) == primes_up_to(1000)


def test_cache_rejects_garbage():
    with pytest.raises(CacheError):
        PrimeTable.from_bytes(b'XXXX')
    data = bytearray(primes_up_to(100).to_bytes())
    data[:4] = b'NOPE'
    with pytest.raises(CacheError):
        PrimeTable.from_bytes(bytes(data))
    data = primes_up_to(100).to_bytes()
    with pytest.raises(CacheError):
        PrimeTable.from_bytes(data[:-3])


def test_unsegmented_budget():
    config = SieveConfig(segment_size=2 ** 10, memory_budget=2 ** 12,
                         segmented=False)
    with pytest.raises(ResourceError):
        prime_pi(10 ** 6, config)


def test_table_budget():
    config = SieveConfig(segment_size=2 ** 10, memory_budget=2 ** 12)
    with pytest.raises(ResourceError):
        primes_up_to(10 ** 6, config)


@pytest.mark.parametrize(('x', 'expected'), [
    (0, 0), (1, 0), (2, 1), (3, 2), (10, 4), (100, 25), (10 ** 4, 1229),
    (10 ** 6, 78498),
])
def test_prime_pi(x, expected):
    assert prime_pi(x) == expected
    assert prime_pi(x, TINY) == expected


def test_prime_pi_exhaustive(trial_counts):
    queries = list(range(10 ** 5 + 1))
    assert prime_pi_batch(queries, TINY) == trial_counts.tolist()


def test_prime_pi_spot_checks(trial_counts):
    for x in random.Random(7).sample(range(10 ** 5 + 1), 50):
        assert prime_pi(x, TINY) == trial_counts[x]


@pytest.mark.slow
def test_prime_pi_1e8():
    assert prime_pi(10 ** 8) == 5761455


def test_threaded_sweep():
    threaded = SieveConfig(segment_size=2 ** 10, threads=4)
    assert prime_pi(10 ** 6, threaded) == 78498
    segments = list(iter_prime_segments(10 ** 5, threaded))
    assert [lo for lo, mask in segments] == sorted(lo for lo, m in segments)


def test_batch_examples():
    assert prime_pi_batch([1, 2, 3]) == [0, 1, 2]
    assert prime_pi_batch(sorted([50, 33, 20, 14])) == [6, 8, 11, 15]
    assert prime_pi_batch([]) == []
    assert prime_pi_batch([0, 0, 1]) == [0, 0, 0]


def test_batch_random():
    rng = random.Random(11)
    queries = sorted(rng.randrange(10 ** 6) for _ in range(200))
    expected = [prime_pi(q) for q in queries[::20]]
    assert prime_pi_batch(queries, TINY)[::20] == expected


def test_batch_unsorted():
    with pytest.raises(UnsortedQueryError):
        prime_pi_batch([50, 33, 20, 14])


def test_mertens_small():
    assert mertens_log_sum(2, 0) == mpmath.mpf(1) / 2
    with mpmath.workdps(40):
        expected = sum(mpmath.log(p) / p for p in (2, 3, 5, 7))
        assert abs(mertens_log_sum(10, 1) - expected) < mpmath.mpf(10) ** -38


def test_mertens_float_path():
    fast = mertens_log_sum(10 ** 5, 1, precision=15)
    slow = mertens_log_sum(10 ** 5, 1, precision=30)
    assert abs(fast - slow) < 1e-9


def test_mertens_segments_agree():
    with mpmath.workdps(30):
        whole = mertens_log_sum(10 ** 4, 2, precision=30)
        pieces = mertens_log_sum(10 ** 4, 2, precision=30, config=TINY)
        assert abs(whole - pieces) < mpmath.mpf(10) ** -25


def test_mertens_monotone():
    values = [mertens_log_sum(x, 2, precision=15)
              for x in (10, 100, 1000, 10 ** 4)]
    assert values == sorted(values)


def test_mertens_near_b1():
    x = 10 ** 6
    value = mertens_log_sum(x, 1, precision=15) - mpmath.log(x)
    assert abs(value - B1) < 0.05


@pytest.mark.slow
def test_mertens_convergence():
    def deviation(x):
        return abs(mertens_log_sum(x, 1, precision=15) - mpmath.log(x) - B1)
    assert deviation(10 ** 8) < deviation(10 ** 4)


def test_mertens_domain():
    with pytest.raises(ValueError):
        mertens_log_sum(1, 0)
    with pytest.raises(ValueError):
        mertens_log_sum(10, -1)
