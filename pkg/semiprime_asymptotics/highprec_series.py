#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

"""High-precision reals and truncated power series about s = 1

BigReal values are mpmath ``mpf`` numbers; every computation runs inside
``working_precision(digits)`` which sets the mpmath decimal precision.
A TruncatedSeries stores the coefficients of (s - 1)**j for
j = 0..order and at most a simple pole term pole_part / (s - 1).
"""

import fractions
import math

import mpmath

from semiprime_asymptotics.config import DEFAULT_PRECISION

BigReal = mpmath.mpf

# The only expansion point used by the constants engine.
CENTER = 1


class SeriesError(ValueError):
    """Raised for operations that truncated series cannot represent"""


def working_precision(digits=DEFAULT_PRECISION):
    """Context manager running mpmath at the given decimal precision"""
    return mpmath.workdps(digits)


def big_real(value):
    """Convert int, Fraction, str or mpf to a BigReal at current precision"""
    if isinstance(value, fractions.Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def to_decimal_string(value, digits):
    """Decimal string with exactly `digits` significant digits"""
    return mpmath.nstr(big_real(value), digits, strip_zeros=False)


def from_decimal_string(text):
    return mpmath.mpf(text)


def ulp(value):
    """Unit in the last place of value at the current precision"""
    value = abs(big_real(value))
    if not value:
        return mpmath.mpf(2) ** (-mpmath.mp.prec)
    return mpmath.mpf(2) ** (int(mpmath.floor(mpmath.log(value, 2))) + 1 -
                             mpmath.mp.prec)


class TruncatedSeries(object):
    """Power series in t = s - 1 known up to t**order

    Operations never extend the order; combining series truncates to
    the smaller one.
    """

    def __init__(self, coeffs, order=None, pole_part=0, center=CENTER):
        coeffs = [big_real(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError('order must be nonnegative, got %s' % order)
        coeffs = coeffs[:order + 1]
        coeffs.extend(mpmath.mpf(0) for _ in range(order + 1 - len(coeffs)))
        self.coeffs = coeffs
        self.order = order
        self.pole_part = big_real(pole_part)
        self.center = center

    @classmethod
    def constant(cls, value, order):
        return cls([value], order=order)

    @classmethod
    def identity(cls, order):
        return cls.constant(1, order)

    @classmethod
    def variable(cls, order):
        """The series t itself"""
        return cls([0, 1], order=order)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, index):
        return self.coeffs[index]

    def __repr__(self):
        head = ', '.join(mpmath.nstr(c, 8) for c in self.coeffs[:4])
        if self.order >= 4:
            head += ', ...'
        return '<%s order=%s pole=%s [%s]>' % (
            type(self).__name__, self.order,
            mpmath.nstr(self.pole_part, 8), head)

    def _check_center(self, other):
        if self.center != other.center:
            raise SeriesError('Series expanded about %s and %s cannot be '
                              'combined' % (self.center, other.center))

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order,
                               -self.pole_part, self.center)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order)
        self._check_center(other)
        order = min(self.order, other.order)
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)][:order + 1],
            order, self.pole_part + other.pole_part, self.center)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, series_reciprocal(other))
        return self.scaled(1 / big_real(other))

    def scaled(self, factor):
        factor = big_real(factor)
        return TruncatedSeries([factor * c for c in self.coeffs], self.order,
                               factor * self.pole_part, self.center)

    def reciprocal(self):
        return series_reciprocal(self)

    def derivative(self):
        return series_derivative(self)

    def taylor_derivative(self, k):
        """k-th derivative at the center: k! * coeffs[k]"""
        if self.pole_part:
            raise SeriesError('Taylor derivatives need a series without pole')
        if k > self.order:
            raise SeriesError('Derivative %s exceeds series order %s' %
                              (k, self.order))
        return math.factorial(k) * self.coeffs[k]

    def evaluate(self, t):
        """Value of the truncated sum at t = s - 1"""
        t = big_real(t)
        value = mpmath.polyval(self.coeffs[::-1], t)
        if self.pole_part:
            value += self.pole_part / t
        return value

    def almost_equal(self, other, ulps=4):
        """Coefficientwise comparison within a few units in the last place"""
        if self.order != other.order or self.center != other.center:
            return False
        pairs = list(zip(self.coeffs, other.coeffs))
        pairs.append((self.pole_part, other.pole_part))
        for a, b in pairs:
            scale = max(abs(a), abs(b), mpmath.mpf(1))
            if abs(a - b) > ulps * ulp(scale):
                return False
        return True


def series_mul(a, b):
    """Cauchy product truncated to the smaller order

    A simple pole on one side is carried exactly: (p/t) * b contributes
    p*b[0]/t plus p*b[j+1] to coefficient j, which costs one order of b.
    """
    if not isinstance(b, TruncatedSeries):
        return a.scaled(b)
    if not isinstance(a, TruncatedSeries):
        return b.scaled(a)
    a._check_center(b)
    if a.pole_part and b.pole_part:
        raise SeriesError('Product of two poles is not representable')
    if b.pole_part:
        a, b = b, a

    order = min(a.order, b.order)
    pole = mpmath.mpf(0)
    if a.pole_part:
        order = min(a.order, b.order - 1)
        if order < 0:
            raise SeriesError('Series order too low to absorb a pole')
        pole = a.pole_part * b.coeffs[0]

    coeffs = []
    for j in range(order + 1):
        value = mpmath.fdot(a.coeffs[:j + 1], b.coeffs[j::-1])
        if a.pole_part:
            value += a.pole_part * b.coeffs[j + 1]
        coeffs.append(value)
    return TruncatedSeries(coeffs, order, pole, a.center)


def series_reciprocal(a):
    """1 / a to the order of a

    With a pole, a = (p + t*A(t)) / t and the reciprocal is t / (p + t*A).
    """
    if a.pole_part:
        shifted = TruncatedSeries([a.pole_part] + a.coeffs, a.order + 1,
                                  center=a.center)
        inverse = series_reciprocal(shifted)
        return TruncatedSeries([0] + inverse.coeffs[:a.order], a.order,
                               center=a.center)

    lead = a.coeffs[0]
    if not lead:
        raise SeriesError('Reciprocal of a series with zero constant term')
    inverse = [1 / lead]
    for j in range(1, a.order + 1):
        acc = mpmath.fdot(a.coeffs[1:j + 1], inverse[j - 1::-1])
        inverse.append(-acc / lead)
    return TruncatedSeries(inverse, a.order, center=a.center)


def series_derivative(a):
    """Term-by-term derivative; the order drops by one (a constant stays order 0)"""
    if a.pole_part:
        raise SeriesError('Eliminate the pole part before differentiating')
    if a.order == 0:
        return TruncatedSeries([0], 0, center=a.center)
    coeffs = [(j + 1) * a.coeffs[j + 1] for j in range(a.order)]
    return TruncatedSeries(coeffs, a.order - 1, center=a.center)


def series_log_derivative(a):
    """a' / a for a series with nonzero constant term"""
    return series_mul(series_derivative(a), series_reciprocal(a))
