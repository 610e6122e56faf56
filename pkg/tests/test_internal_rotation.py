"""Winding constraint on internal phase rotation, and the generator itself."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zpfspin.constants import NATURAL, PhysicalConstants
from zpfspin.errors import ResolutionError
from zpfspin.internal_rotation import (
    SpinState,
    apply_spin_z,
    dichotomy_solve,
    rotation_factor,
)
from zpfspin.phase_algebra import MINUS_ONE, ONE, PhaseExpression

HALF = Fraction(1, 2)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


# --- the two-value constraint -------------------------------------------------


def test_canonical_pair():
    result = dichotomy_solve([HALF, -HALF])
    assert result.feasible
    assert result.sign_opposed
    assert result.canonical == (-HALF, HALF)


def test_adjacent_but_not_opposed():
    result = dichotomy_solve([HALF, Fraction(3, 2)])
    assert result.feasible
    assert not result.sign_opposed
    assert result.canonical == (-HALF, HALF)


def test_repeated_value_is_infeasible():
    result = dichotomy_solve([HALF, HALF])
    assert not result.feasible
    assert result.canonical is None


def test_singleton_is_vacuously_feasible():
    assert dichotomy_solve([Fraction(7, 3)]).feasible


def test_empty_input_rejected():
    with pytest.raises(ValueError):
        dichotomy_solve([])


@given(st.lists(rationals, min_size=3, max_size=5, unique=True))
def test_three_or_more_values_never_feasible(values):
    assert not dichotomy_solve(values).feasible


@given(rationals)
def test_unit_gap_pairs_feasible(a):
    result = dichotomy_solve([a, a + 1])
    assert result.feasible
    assert result.canonical == (-HALF, HALF)
    assert result.sign_opposed == (a == -HALF)


@given(st.lists(rationals, min_size=1, max_size=4, unique=True))
def test_order_does_not_matter(values):
    forward = dichotomy_solve(values)
    backward = dichotomy_solve(list(reversed(values)))
    assert forward == backward


@given(st.lists(rationals, min_size=2, max_size=4, unique=True), rationals)
def test_adding_a_value_never_helps(values, extra):
    if extra in values:
        return
    before = dichotomy_solve(values)
    after = dichotomy_solve(values + [extra])
    if after.feasible:
        assert before.feasible


# --- the generator ------------------------------------------------------------


def test_winding_must_be_half():
    SpinState("up", HALF)
    SpinState("down", -HALF)
    with pytest.raises(ValueError):
        SpinState("bad", Fraction(3, 2))
    with pytest.raises(ValueError):
        SpinState("bad", 0)


def test_spin_property_reads_winding():
    assert SpinState("up", HALF).spin == HALF
    assert SpinState("down", -HALF).spin == -HALF


def test_symbolic_eigenvalue_scales_with_hbar():
    consts = PhysicalConstants(hbar=0.7, c=1.0, m=1.0, mu0=1.0)
    assert apply_spin_z(SpinState("up", HALF), "symbolic", consts) == 0.7 * 0.5
    assert apply_spin_z(SpinState("down", -HALF), "symbolic", consts) == -0.7 * 0.5


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        apply_spin_z(SpinState("up", HALF), "analytic")


@pytest.mark.parametrize("winding", [HALF, -HALF])
@pytest.mark.parametrize("grid", [256, 300, 1024])
def test_numeric_agrees_with_symbolic(winding, grid):
    state = SpinState("s", winding)
    symbolic = apply_spin_z(state, "symbolic")
    numeric = apply_spin_z(state, "numeric", grid=grid)
    assert abs(numeric - symbolic) <= 1e-8


def test_numeric_reference_resolution():
    numeric = apply_spin_z(SpinState("s", HALF), "numeric", grid=1024)
    assert abs(numeric - 0.5) <= 1e-8


def test_numeric_needs_enough_points():
    with pytest.raises(ResolutionError):
        apply_spin_z(SpinState("s", HALF), "numeric", grid=15)
    value = apply_spin_z(SpinState("s", HALF), "numeric", grid=16)
    assert isinstance(value, float)


# --- finite rotations ---------------------------------------------------------


def test_full_turn_flips_sign():
    assert rotation_factor(HALF, 2) == MINUS_ONE
    assert rotation_factor(-HALF, 2) == MINUS_ONE
    assert rotation_factor(HALF, 4) == ONE


def test_rotation_phase_is_minus_winding_times_angle():
    assert rotation_factor(HALF, 1) == PhaseExpression.from_pi(-HALF)
    got = rotation_factor(-HALF, Fraction(1, 3))
    assert got == PhaseExpression.from_pi(Fraction(1, 6))


@given(st.sampled_from([HALF, -HALF]), st.fractions(min_value=0, max_value=8, max_denominator=8))
def test_rotation_factors_compose(winding, theta_over_pi):
    one_step = rotation_factor(winding, theta_over_pi)
    two_step = rotation_factor(winding, theta_over_pi * 2)
    assert one_step * one_step == two_step
