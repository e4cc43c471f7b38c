from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class BudgetError(ValueError):
    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(reason)


@dataclass(frozen=True)
class BudgetParameters:
    b: Fraction
    c: Fraction
    d: Fraction
    eps: Fraction
    s: int

    @classmethod
    def parse(cls, b: str, c: str, d: str, eps: str, s: str) -> BudgetParameters:
        try:
            return cls(Fraction(b), Fraction(c), Fraction(d), Fraction(eps), int(s))
        except (ValueError, ZeroDivisionError) as e:
            raise BudgetError(f"bad budget parameter: {e}") from None


@dataclass(frozen=True)
class BudgetResult:
    t: int
    delta: Fraction
    exponent: Fraction
    lhs_exponent: Fraction
    rhs_exponent: Fraction
    lhs: float | None
    rhs: float | None

    @property
    def identity_holds(self) -> bool:
        return self.lhs_exponent == self.rhs_exponent


def _power(s: int, e: Fraction) -> float | None:
    """s**e as a float, or None when it does not fit."""
    try:
        return math.exp(float(e) * math.log(s))
    except OverflowError:
        return None


def _iroot_ceil(value: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= value."""
    if value <= 1:
        return value
    lo, hi = 1, 1 << (value.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k >= value:
            hi = mid
        else:
            lo = mid + 1
    return lo


def distillation_budget(p: BudgetParameters) -> BudgetResult:
    """Number of inputs t(s) to compose and the slack delta that beat a size bound.

    t = ceil(s^((b + c d) d / eps)), delta = c eps^2 / ((b + c d) d). The result
    also carries both exponents of s^(b + c(d - eps)) = t^(eps/d - delta) in base s,
    with t taken before rounding, and the two powers as floats when they fit.
    """
    if p.d == 0:
        raise BudgetError("d must be nonzero")
    if p.eps <= 0:
        raise BudgetError("eps must be positive")
    if p.b < 0 or p.c < 0 or p.d < 0:
        raise BudgetError("b, c and d must be non-negative")
    if p.s < 1:
        raise BudgetError("s must be at least 1")
    growth = p.b + p.c * p.d
    if growth == 0:
        raise BudgetError("b + c*d must be nonzero")

    exponent = growth * p.d / p.eps
    delta = p.c * p.eps**2 / (growth * p.d)
    t = _iroot_ceil(p.s**exponent.numerator, exponent.denominator)

    lhs_exponent = p.b + p.c * (p.d - p.eps)
    rhs_exponent = exponent * (p.eps / p.d - delta)
    return BudgetResult(
        t=t,
        delta=delta,
        exponent=exponent,
        lhs_exponent=lhs_exponent,
        rhs_exponent=rhs_exponent,
        lhs=_power(p.s, lhs_exponent),
        rhs=_power(p.s, rhs_exponent),
    )
