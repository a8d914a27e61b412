#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

import math

import mpmath
import pytest

from semiprime_asymptotics.asymptotics import (
    ErrorTableRow, alpha_n, approximant, error_table, even_relative_error,
    geometric_grid, ishmukhametov_sharifullina, landau_pi_k,
    locate_sign_change, n_min, relative_error, rows_from_csv,
    rows_from_json, rows_to_csv, rows_to_json, s_n_diagnostic,
    s_n_expansion, truncated_sums)
from semiprime_asymptotics.constants import PrecisionError, q_value

PI2 = {10 ** 4: 2600, 10 ** 5: 23378, 10 ** 6: 210035, 10 ** 8: 17427258}


def rel(a, b):
    return abs(a - b) / abs(b)


def test_alpha_n_at_e():
    with mpmath.workdps(40):
        e = mpmath.e
        assert rel(alpha_n(e, 1), e) < 1e-35
        # 0! + 1! + 2! = 4
        assert rel(alpha_n(e, 3), 4 * e) < 1e-35


def test_alpha_n_termwise():
    with mpmath.workdps(30):
        x = 10 ** 6
        lx = mpmath.log(x)
        expected = x / lx + x / lx ** 2
        assert rel(alpha_n(x, 2, precision=30), expected) < 1e-28


def test_alpha_n_domain():
    with pytest.raises(ValueError):
        alpha_n(1, 2)
    with pytest.raises(ValueError):
        alpha_n(10, 0)


def test_a1_is_landau(constants_table):
    for x in (100, 10 ** 6, 10 ** 12):
        assert rel(approximant(1, x, constants_table), landau_pi_k(2, x)) \
            < 1e-35


def test_landau_k1():
    with mpmath.workdps(40):
        x = 10 ** 6
        assert rel(landau_pi_k(1, x), x / mpmath.log(x)) < 1e-35


def test_a2_uses_meissel_mertens(constants_table):
    with mpmath.workdps(40):
        x = mpmath.mpf(10 ** 6)
        lx = mpmath.log(x)
        M = mpmath.mpf('0.26149721284764278375')
        expected = x * mpmath.log(lx) / lx + M * x / lx
        assert rel(approximant(2, x, constants_table), expected) < 1e-18


def test_odd_even_differences(constants_table):
    with mpmath.workdps(40):
        for x in (10 ** 4, 10 ** 6, 10 ** 9):
            lx = mpmath.log(x)
            llx = mpmath.log(lx)
            for ell in range(1, 8):
                diff = approximant(2 * ell + 1, x, constants_table) - \
                    approximant(2 * ell, x, constants_table)
                expected = math.factorial(ell) * x * llx / lx ** (ell + 1)
                assert rel(diff, expected) < 1e-25


def test_approximant_needs_constants(constants_table):
    with pytest.raises(PrecisionError):
        approximant(2 * (constants_table.n_max + 2), 10 ** 6, constants_table)


def test_approximant_domain(constants_table):
    with pytest.raises(ValueError):
        approximant(2, 2, constants_table)
    with pytest.raises(ValueError):
        approximant(0, 100, constants_table)


def test_ishmukhametov_sharifullina(constants_table):
    x = 10 ** 6
    value = ishmukhametov_sharifullina(x)
    assert value < x
    assert value != approximant(4, x, constants_table)
    with mpmath.workdps(40):
        lx = mpmath.log(x)
        expected = (x * mpmath.log(lx) / lx + mpmath.mpf('0.265') * x / lx -
                    mpmath.mpf('1.540') * x / lx ** 2)
        assert rel(value, expected) < 1e-35
    with mpmath.workdps(60):
        lx = mpmath.log(x)
        expected = (x * mpmath.log(lx) / lx + mpmath.mpf('0.265') * x / lx -
                    mpmath.mpf('1.540') * x / lx ** 2)
        value = ishmukhametov_sharifullina(x, precision=60)
        assert rel(value, expected) < 1e-55
    for x in (100, 10 ** 4, 10 ** 10):
        assert ishmukhametov_sharifullina(x) < x


def test_relative_error(constants_table):
    row = relative_error(2, 10 ** 6, constants_table)
    assert row.pi2_exact == PI2[10 ** 6]
    assert row.eps_n >= 0
    with mpmath.workdps(40):
        assert row.eps_n == abs(row.a_n - row.pi2_exact) / row.pi2_exact
    assert row.label == 'Meissel-Mertens'
    assert relative_error(1, 10 ** 6, constants_table).label == 'Landau'


def test_crossing_signs(constants_table):
    assert relative_error(2, 10 ** 5, constants_table).overestimates
    assert not relative_error(2, 10 ** 6, constants_table).overestimates


def test_even_consistency(constants_table):
    C = constants_table.C
    for x in (10 ** 4, 10 ** 5, 10 ** 6):
        for ell in range(1, 6):
            with mpmath.workdps(40):
                lx = mpmath.log(x)
                llx = mpmath.log(lx)
                a = 0
                for i in range(1, ell + 1):
                    a += (math.factorial(i - 1) * llx + C[i - 1]) * x / lx ** i
                expected = abs(a - PI2[x]) / PI2[x]
            eps = even_relative_error(ell, x, PI2[x], constants_table)
            assert rel(eps, expected) < 1e-30


def test_truncated_sums(constants_table):
    log_part, const_part = truncated_sums(1, 10 ** 6, constants_table)
    assert rel(log_part, approximant(1, 10 ** 6, constants_table)) < 1e-35
    assert const_part > 0


def test_precision_doubling(constants_table):
    for x in (10 ** 4, 10 ** 5, 10 ** 6):
        for n in range(1, 9):
            coarse = relative_error(n, x, constants_table, 40, pi2=PI2[x])
            fine = relative_error(n, x, constants_table, 80, pi2=PI2[x])
            assert rel(coarse.eps_n, fine.eps_n) < 1e-10


def check_error_curve(x, n_max, table):
    rows = error_table([x], n_max, table)
    eps = [row.eps_n for row in rows]
    best = n_min(x, n_max, table, pi2=rows[0].pi2_exact)
    assert best > 1
    assert eps[best - 1] == min(eps)
    assert eps[best - 1] < eps[0]
    assert all(e > eps[best - 1] for e in eps[:best - 1])
    return best


def test_error_curve_1e6(constants_table):
    n_max = 20
    best = check_error_curve(10 ** 6, n_max, constants_table)
    eps = [row.eps_n for row in error_table([10 ** 6], n_max, constants_table)]
    # Past the minimum the odd and even orders each move away from pi_2.
    assert all(e > eps[best - 1] for e in eps[best:])
    assert all(eps[n + 1] > eps[n - 1] for n in range(best, n_max - 1))


@pytest.mark.slow
def test_n_min_increases(constants_table):
    low = check_error_curve(10 ** 6, 22, constants_table)
    high = check_error_curve(10 ** 8, 22, constants_table)
    assert low < high


def test_n_min_small_range(constants_table):
    assert n_min(10 ** 6, 2, constants_table, pi2=PI2[10 ** 6]) in (1, 2)
    with pytest.raises(ValueError):
        n_min(10 ** 6, 1, constants_table)


def test_n_min_stable(constants_table):
    pi2 = PI2[10 ** 6]
    best = n_min(10 ** 6, 20, constants_table, pi2=pi2)
    for n_max in range(max(best, 2), 21):
        assert n_min(10 ** 6, n_max, constants_table, pi2=pi2) == best


def test_s_n_lower_bound():
    with mpmath.workdps(40):
        for x in (100, 10 ** 4):
            reciprocal = mpmath.fsum(mpmath.mpf(1) / p
                                     for p in (2, 3, 5, 7, 11, 13, 17, 19,
                                               23, 29, 31, 37, 41, 43, 47,
                                               53, 59, 61, 67, 71, 73, 79,
                                               83, 89, 97)
                                     if p * p <= x)
            assert s_n_diagnostic(1, x) >= reciprocal


@pytest.mark.parametrize('n', [1, 2, 3])
def test_s_n_expansion_improves(n, constants_table):
    def gap(x):
        return abs(s_n_diagnostic(n, x) -
                   s_n_expansion(n, x, 2, constants_table))
    assert gap(10 ** 8) < gap(10 ** 4)


def test_s_n_expansion_uses_q(constants_table):
    x = 10 ** 6
    base = s_n_expansion(1, x, 0, constants_table)
    with mpmath.workdps(40):
        q = q_value(4)
        shifted = base + mpmath.mpf(q.numerator) / q.denominator
        assert rel(s_n_expansion(4, x, 0, constants_table), shifted) < 1e-35


def test_error_table_structure(constants_table):
    rows = error_table([10 ** 6, 10 ** 4, 10 ** 6], 8, constants_table)
    assert len(rows) == 16
    assert [(r.x, r.n) for r in rows] == \
        [(x, n) for x in (10 ** 4, 10 ** 6) for n in range(1, 9)]
    assert set(r.pi2_exact for r in rows[8:]) == set([PI2[10 ** 6]])


def test_error_table_threads(constants_table):
    from semiprime_asymptotics.config import SieveConfig
    threaded = SieveConfig(threads=3)
    xs = [10 ** 4, 10 ** 5, 10 ** 6]
    assert error_table(xs, 4, constants_table, config=threaded) == \
        error_table(xs, 4, constants_table)


def test_error_table_domain(constants_table):
    with pytest.raises(ValueError):
        error_table([], 4, constants_table)
    with pytest.raises(ValueError):
        error_table([3], 4, constants_table)


def test_rows_csv_roundtrip(constants_table):
    rows = error_table([10 ** 4, 10 ** 5], 6, constants_table)
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == 'x,n,a_n,pi2,eps_n'
    assert '\r' not in text
    assert rows_from_csv(text) == rows
    assert rows_from_json(rows_to_json(rows)) == rows


def test_rows_bad_header():
    with pytest.raises(ValueError):
        rows_from_csv('x,n,pi2\n1,2,3\n')


def test_row_equality():
    row = ErrorTableRow(100, 2, mpmath.mpf('30.5'), 34, mpmath.mpf('0.1'))
    same = ErrorTableRow(100, 2, mpmath.mpf('30.5'), 34, mpmath.mpf('0.1'))
    other = ErrorTableRow(100, 3, mpmath.mpf('30.5'), 34, mpmath.mpf('0.1'))
    assert row == same
    assert row != other


def test_locate_sign_change(constants_table):
    lo, hi = locate_sign_change(2, 2 * 10 ** 5, 3 * 10 ** 5, constants_table)
    assert 2 * 10 ** 5 <= lo < hi <= 3 * 10 ** 5
    assert hi - lo <= 1000
    assert relative_error(2, lo, constants_table).overestimates
    assert not relative_error(2, hi, constants_table).overestimates


def test_locate_sign_change_same_sign(constants_table):
    with pytest.raises(ValueError):
        locate_sign_change(2, 10 ** 6, 2 * 10 ** 6, constants_table)


def test_geometric_grid():
    grid = geometric_grid(10 ** 4, 10 ** 6)
    assert grid[0] == 10 ** 4
    assert grid[-1] == 10 ** 6
    assert len(grid) == 81
    assert grid == sorted(set(grid))
    assert geometric_grid(100, 1000, per_decade=1) == [100, 1000]
    with pytest.raises(ValueError):
        geometric_grid(2, 100)
