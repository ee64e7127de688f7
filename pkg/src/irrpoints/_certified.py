"""Certified rational enclosures for the irrational quantities in the bounds.

All arithmetic goes through ``mpmath.iv`` at 128 bits, so every returned upper
value is a true upper bound with relative error far below 2**-30.
"""
from fractions import Fraction
from math import isqrt

from contextlib import contextmanager

from mpmath import iv
from mpmath.libmp import to_rational

PREC = 128


@contextmanager
def _precision():
    old = iv.prec
    iv.prec = PREC
    try:
        yield
    finally:
        iv.prec = old


def interval(x):
    """Enclosing interval for an int or Fraction."""
    x = Fraction(x)
    with _precision():
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def upper(x) -> Fraction:
    p, q = to_rational(x._mpi_[1])
    return Fraction(int(p), int(q))


def lower(x) -> Fraction:
    p, q = to_rational(x._mpi_[0])
    return Fraction(int(p), int(q))


def log2(x):
    with _precision():
        return iv.log(interval(x)) / iv.log(2)


def sqrt_pow_upper(n: int, e: int) -> Fraction:
    """Upper bound of (sqrt n)**e; exact when n is a square or e is even."""
    if e % 2 == 0:
        return Fraction(n ** (e // 2))
    r = isqrt(n)
    if r * r == n:
        return Fraction(r ** e)
    bits = 96
    root = Fraction(isqrt(n << (2 * bits)) + 1, 1 << bits)
    return Fraction(n ** ((e - 1) // 2)) * root
