"""
Interval-bounded reals for quantities that leave the rationals (roots and
non-integer powers in L^q norms). Exact Fractions are returned whenever
the value is rational.
"""
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
import math

from django.conf import settings
from mpmath import iv

from free_group.exceptions import InvalidParameter


@dataclass(frozen=True)
class RealInterval:
    lower: float
    upper: float
    mid: float

    @property
    def width(self):
        return self.upper - self.lower

    def __float__(self):
        return self.mid

    def __str__(self):
        return repr(self.mid)


@contextmanager
def working_precision():
    saved = iv.prec
    iv.prec = getattr(settings, 'LAB_REAL_PRECISION', 64)
    try:
        yield
    finally:
        iv.prec = saved


def _interval(value):
    value = Fraction(value)
    return iv.mpf(value.numerator) / iv.mpf(value.denominator)


def _wrap(x):
    return RealInterval(float(x.a), float(x.b), float(x.mid))


def _integer_root(n, q):
    try:
        guess = int(round(n ** (1.0 / q)))
    except OverflowError:
        return None
    for candidate in (guess - 1, guess, guess + 1):
        if candidate >= 0 and candidate ** q == n:
            return candidate
    return None


def is_infinite(q):
    return isinstance(q, float) and math.isinf(q) or q in ('inf', 'infinity')


def rational_root(value, q):
    """value ** (1/q) for value >= 0: a Fraction if exact, else a RealInterval."""
    value, q = Fraction(value), Fraction(q)
    if value == 0 or q == 1:
        return value
    if q.denominator == 1:
        num = _integer_root(value.numerator, q.numerator)
        den = _integer_root(value.denominator, q.numerator)
        if num is not None and den is not None:
            return Fraction(num, den)
    with working_precision():
        return _wrap(iv.exp(iv.log(_interval(value)) / _interval(q)))


def lq_norm_of(terms, q):
    """
    (sum |v|^q * w) ** (1/q) over (v, w) pairs, or max |v| over w > 0 when q
    is infinite. Values may be Fractions or floats (floats convert exactly).
    """
    terms = [(abs(Fraction(v)), Fraction(w)) for v, w in terms]
    if is_infinite(q):
        return max((v for v, w in terms if w > 0), default=Fraction(0))
    q = Fraction(q)
    if q < 1:
        raise InvalidParameter(f"L^q needs q >= 1, got {q}")
    if q.denominator == 1:
        return rational_root(sum((v ** q.numerator * w for v, w in terms), Fraction(0)), q)
    nonzero = [(v, w) for v, w in terms if v and w]
    if not nonzero:
        return Fraction(0)
    with working_precision():
        total = iv.mpf(0)
        for v, w in nonzero:
            total += iv.exp(iv.log(_interval(v)) * _interval(q)) * _interval(w)
        return _wrap(iv.exp(iv.log(total) / _interval(q)))
