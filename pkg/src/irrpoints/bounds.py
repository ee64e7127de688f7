"""Closed-form counting bounds, evaluated as certified rational upper values.

Every function returns a ``Fraction`` that is an upper bound of the true real
value (exact whenever the value is rational), so comparisons
``actual <= bound`` are sound.
"""
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, Decimal, localcontext
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from . import _certified as cert


def binom(a: int, b: int) -> int:
    """Binomial coefficient, 0 outside ``0 <= b <= a``."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def xi(n: int, m: int) -> int:
    return binom(m - (n - 1) // 2 - 1, n // 2) + binom(m - n // 2 - 1, (n - 1) // 2)


def simplex_cover_size(n: int) -> int:
    """Number of parallelepipeds covering one n-simplex: (n+1) * C(n^2-2, n-1)."""
    return (n + 1) * binom(n * n - 2, n - 1)


def eta(n: int, m: int) -> int:
    return factorial(n) * xi(n, m) * simplex_cover_size(n)


def _log2_upper(x: Fraction) -> Fraction:
    x = Fraction(x)
    # exact when x is a power of two
    num, den = x.numerator, x.denominator
    if num & (num - 1) == 0 and den & (den - 1) == 0:
        return Fraction(num.bit_length() - den.bit_length())
    return cert.upper(cert.log2(x))


def _slab_factor_upper(width) -> Fraction:
    """Upper value of 3 + 2*log2(1 + width/3)."""
    return 3 + 2 * _log2_upper(1 + Fraction(width) / 3)


def box_bound(lo: Sequence[int], hi: Sequence[int]) -> Fraction:
    """Bound on the irreducible points of ``{lo <= A x <= hi}`` (any non-singular A)."""
    out = Fraction(2)
    for l, h in zip(lo[:-1], hi[:-1]):
        out *= _slab_factor_upper(h - l)
    return out


def vertex_coordinate_bounds(n: int, alpha, beta) -> tuple[Fraction, Fraction]:
    """Upper limits (|q|, |p_j|) for vertices p/q of an integer system."""
    r = cert.sqrt_pow_upper(n, n)
    return Fraction(alpha) ** n * r, Fraction(alpha) ** (n - 1) * Fraction(beta) * r


def facet_coefficient_bound(n: int, alpha, beta) -> Fraction:
    """Upper limit on |a_j| for a hyperplane through n vertices of the system."""
    return (Fraction(alpha) ** (n * n - n + 1) * Fraction(beta) ** (n - 1)
            * cert.sqrt_pow_upper(n, n * n + n))


def facet_rhs_bound(n: int, alpha, beta) -> Fraction:
    return (Fraction(alpha) ** (n * (n - 1)) * Fraction(beta) ** n
            * cert.sqrt_pow_upper(n, n * n + n))


def piece_width_bound(n: int, alpha, beta) -> Fraction:
    """Upper limit on c_i - b_i for pieces of the polytope cover."""
    return (2 * Fraction(alpha) ** (n * n) * Fraction(beta) ** n
            * cert.sqrt_pow_upper(n, n * n + 2 * n + 2))


def _eq13(n: int, m: int, alpha, beta) -> Fraction:
    big = Fraction(2, 3) * Fraction(alpha) ** (n * n) * Fraction(beta) ** n \
        * cert.sqrt_pow_upper(n, n * n + 2 * n + 2)
    f = 3 + 2 * _log2_upper(1 + big)
    return 2 * eta(n, m) * f ** (n - 1)


@dataclass(frozen=True)
class BoundInputs:
    n: int
    m: int
    alpha: Fraction
    beta: Fraction
    k: int | None = None
    gamma: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.n < 1 or self.m < 1 or self.alpha < 0 or self.beta < 0:
            raise ValueError("need n >= 1, m >= 1, alpha >= 0, beta >= 0")
        if self.k is not None and self.k < 2:
            raise ValueError("grid side k must be >= 2")
        object.__setattr__(self, "gamma", max(self.alpha, self.beta))

    @classmethod
    def from_polytope(cls, P, k=None):
        H = P.to_hpolytope()
        return cls(H.n, H.m, H.alpha, H.beta, k)

    def to_json(self):
        return {"n": self.n, "m": self.m, "alpha": str(self.alpha), "beta": str(self.beta),
                "gamma": str(self.gamma), "k": self.k}


def polytope_bound(inp: BoundInputs) -> Fraction:
    """Bound on irreducible points of ``{A x <= b}`` with |a_ij| <= alpha, |b_i| <= beta."""
    if inp.alpha < 1 or inp.beta < 1:
        raise ValueError("polytope_bound needs alpha >= 1 and beta >= 1")
    return _eq13(inp.n, inp.m, inp.alpha, inp.beta)


def grid_coefficient_bounds(n: int, k: int) -> tuple[Fraction, Fraction]:
    """Upper values of the integer-coefficient limits for inequalities over E_k^n."""
    if k < 2:
        raise ValueError("k must be >= 2")
    a = Fraction((k - 1) ** (n - 1), 2 ** n) * cert.sqrt_pow_upper(n + 1, n + 1)
    b = Fraction((k - 1) ** n, 2 ** (n + 1)) * cert.sqrt_pow_upper(n + 2, n + 2)
    return a, b


def grid_bound(n: int, k: int, m_prime: int) -> Fraction:
    """Bound for polytopes with m' inequalities whose integer points lie in E_k^n."""
    alpha, beta = grid_coefficient_bounds(n, k)
    return _eq13(n, m_prime + 2 * n, alpha, beta)


def tprime_teaching_bound(n: int, k: int) -> Fraction:
    """n (1 + log2 n) (1 + log2(k+1))^(n-2), the per-class limit on the special class."""
    if n < 2:
        raise ValueError("defined for n >= 2")
    return n * (1 + _log2_upper(Fraction(n))) * (1 + _log2_upper(Fraction(k + 1))) ** (n - 2)


def decimal_upper(x: Fraction, digits: int = 20) -> str:
    """Decimal string rounded toward +infinity."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_CEILING
        return str(Decimal(x.numerator) / Decimal(x.denominator))


@dataclass(frozen=True)
class BoundReport:
    bound_name: str
    inputs: BoundInputs | dict
    bound_value: Fraction
    actual_count: int | None = None

    @property
    def slack(self) -> Fraction | None:
        if self.actual_count is None:
            return None
        return self.bound_value - self.actual_count

    @property
    def holds(self) -> bool:
        return self.actual_count is None or self.slack >= 0

    def to_json(self) -> dict:
        inputs = self.inputs.to_json() if isinstance(self.inputs, BoundInputs) else dict(self.inputs)
        slack = self.slack
        return {
            "bound_name": self.bound_name,
            "inputs": inputs,
            "bound_value": decimal_upper(self.bound_value),
            "actual_count": self.actual_count,
            "slack": None if slack is None else decimal_upper(slack),
        }
