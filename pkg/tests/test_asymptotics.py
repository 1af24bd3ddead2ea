from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pacmeasure import catalog
from pacmeasure.asymptotics import generic_target, omega_sum, ultralimit
from pacmeasure.exceptions import GenericMissing, NotZeroOne
from pacmeasure.measure import SignedPowerSum, closed_form


def form(name, target):
    return closed_form(catalog.get(name), target)


def test_omega_sum_squares():
    assert omega_sum(form("squares", "trivial")).value == 1
    assert omega_sum(form("squares", "trivial"), start=2).value == F(1, 2)
    full = omega_sum(form("squares", "full"))
    assert full.infinite and str(full) == "inf"


def test_omega_sum_zero_form():
    assert omega_sum(SignedPowerSum(3)).value == 0


def test_omega_sum_fifth_root():
    # 5 * sum_{e>=1} 5^-e
    assert omega_sum(form("fifth-root", "image")).value == F(5, 4)


@given(st.sampled_from([("squares", "trivial"), ("fifth-root", "image"), ("s4-over-a4", "d8"), ("wreath-5-2", "one-root")]), st.integers(1, 6))
def test_omega_sum_telescopes(key, start):
    f = form(*key)
    assert omega_sum(f, start).value == f(start) + omega_sum(f, start + 1).value


def test_ultralimit_examples():
    assert ultralimit(form("squares", "trivial")).value == 0
    assert ultralimit(form("squares", "full")).value == 1
    assert ultralimit(SignedPowerSum(1, ((1, 1),))).value == 1
    with pytest.raises(NotZeroOne):
        ultralimit(SignedPowerSum(2, ((2, 2),)))


@pytest.mark.parametrize("name", catalog.SPLIT_SCENARIOS)
def test_ultralimit_zero_one_everywhere(name):
    s = catalog.get(name)
    for t in s.targets:
        assert ultralimit(closed_form(s, t)).value in (0, 1)


def test_generic_target():
    assert generic_target(catalog.get("squares")) == "full"
    assert generic_target(catalog.get("fifth-root").with_all_regular_targets()) == "full"
    with pytest.raises(GenericMissing):
        generic_target(catalog.get("s4-over-a4"))
