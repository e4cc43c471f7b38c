from __future__ import annotations

from fractions import Fraction

import pytest

from crosscomp.budget import BudgetError, BudgetParameters, distillation_budget


def _params(b, c, d, eps, s) -> BudgetParameters:
    return BudgetParameters.parse(str(b), str(c), str(d), str(eps), str(s))


def test_budget_small_example():
    res = distillation_budget(_params(2, 1, 1, 1, 2))
    assert res.t == 8
    assert res.delta == Fraction(1, 3)
    assert res.exponent == 3
    assert res.lhs == pytest.approx(res.rhs)


def test_budget_with_zero_b():
    res = distillation_budget(_params(0, 1, 2, 1, 3))
    assert res.t == 81
    assert res.delta == Fraction(1, 4)
    assert res.lhs == pytest.approx(res.rhs)


def test_budget_rounds_fractional_powers_up():
    # 2^(3/4) is about 1.68
    res = distillation_budget(_params(1, 1, Fraction(1, 2), 1, 2))
    assert res.exponent == Fraction(3, 4)
    assert res.t == 2
    res = distillation_budget(_params(1, 1, 1, 1, 2))
    assert res.exponent == 2 and res.t == 4


def test_parse_accepts_rationals():
    p = BudgetParameters.parse("3/2", "1", "1", "1/2", "4")
    assert p.b == Fraction(3, 2) and p.eps == Fraction(1, 2) and p.s == 4


@pytest.mark.parametrize(
    "args",
    [
        ("1", "1", "0", "1", "2"),
        ("1", "1", "1", "0", "2"),
        ("-1", "1", "1", "1", "2"),
        ("1", "1", "1", "1", "0"),
        ("0", "0", "1", "1", "2"),
        ("x", "1", "1", "1", "2"),
        ("1", "1", "1", "1/0", "2"),
    ],
)
def test_budget_rejects_bad_parameters(args):
    with pytest.raises(BudgetError):
        distillation_budget(BudgetParameters.parse(*args))


def test_budget_identity_is_exact():
    res = distillation_budget(_params(2, 1, 1, 1, 2))
    assert res.identity_holds
    assert res.lhs_exponent == res.rhs_exponent == 2
    res = distillation_budget(_params(Fraction(3, 2), 2, Fraction(1, 3), Fraction(1, 2), 5))
    assert res.identity_holds


def test_budget_large_s_does_not_overflow():
    res = distillation_budget(_params(100, 1, 1, 1, 10000))
    assert res.t == 10000**101
    assert res.delta == Fraction(1, 101)
    assert res.lhs_exponent == res.rhs_exponent == 100
    assert res.lhs is None and res.rhs is None
    assert res.identity_holds
