import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_max, fourier_motzkin_feasible
from splitdom.geometry import (
    LinSystem,
    contained_in_halfspace,
    feasible_mixed,
    lp_maximize,
)

F = Fraction


def test_max_with_one_row():
    res = lp_maximize((1, 1), LinSystem(2, weak=[((1, 1), F(3, 2))]))
    assert res.value == F(3, 2)
    assert sum(res.argpoint) == F(3, 2)


def test_max_infeasible():
    assert lp_maximize((1,), LinSystem(1, weak=[((1,), -1)])) is None


def test_max_over_box():
    res = lp_maximize((2, 3), LinSystem(2))
    assert res.value == 5
    assert res.argpoint == (1, 1)


def test_lp_rejects_strict_rows():
    with pytest.raises(ValueError):
        lp_maximize((1,), LinSystem(1, strict=[((1,), 1)]))


def test_lp_dimension_mismatch():
    with pytest.raises(ValueError):
        lp_maximize((1, 1), LinSystem(1))


def test_mixed_open_interval():
    x = feasible_mixed(LinSystem(1, strict=[((-1,), 0), ((1,), 1)]))
    assert x is not None and 0 < x[0] < 1


def test_mixed_empty_below_box():
    assert feasible_mixed(LinSystem(1, strict=[((1,), 0)])) is None


def test_mixed_contradiction():
    assert feasible_mixed(LinSystem(2, weak=[((1, 1), 1)], strict=[((-1, -1), -1)])) is None


def test_mixed_touching_strict_pair_is_empty():
    # x < 1/2 and x > 1/2
    assert feasible_mixed(LinSystem(1, strict=[((1,), F(1, 2)), ((-1,), F(-1, 2))])) is None


def test_containment_examples():
    assert contained_in_halfspace(LinSystem(2), (1, 1), 2)
    assert not contained_in_halfspace(LinSystem(1), (1,), F(1, 2))
    assert contained_in_halfspace(LinSystem(1, weak=[((1,), -1)]), (1,), -100)


def test_degenerate_vertex_terminates():
    # many rows tight at the origin
    rows = [((1, 1, 1), 0), ((1, -1, 0), 0), ((-1, 1, 0), 0), ((1, 0, -1), 0), ((0, 1, 1), 0)]
    res = lp_maximize((1, 1, 1), LinSystem(3, weak=rows))
    assert res.value == 0


def test_deterministic():
    sys = LinSystem(3, weak=[((1, 2, -1), F(3, 2)), ((-2, 1, 1), 1)], strict=[((1, 1, 1), 2)])
    assert feasible_mixed(sys) == feasible_mixed(sys)
    weak = LinSystem(3, weak=sys.weak)
    assert lp_maximize((1, 1, 1), weak) == lp_maximize((1, 1, 1), weak)


def test_satisfied_by():
    sys = LinSystem(2, weak=[((1, 1), 1)], strict=[((1, 0), F(1, 2))])
    assert sys.satisfied_by((F(1, 4), F(1, 2)))
    assert not sys.satisfied_by((F(1, 2), F(1, 4)))
    assert not sys.satisfied_by((F(-1, 4), 0))


coef = st.integers(-3, 3)


@st.composite
def systems(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(0, 4))
    rows = [(tuple(draw(coef) for _ in range(n)), draw(coef)) for _ in range(m)]
    tags = [draw(st.booleans()) for _ in range(m)]
    c = tuple(draw(coef) for _ in range(n))
    return n, rows, tags, c


@settings(max_examples=300, deadline=None)
@given(systems())
def test_lp_matches_vertex_enumeration(case):
    n, rows, _, c = case
    res = lp_maximize(c, LinSystem(n, weak=rows))
    expected = brute_max(c, n, rows)
    if expected is None:
        assert res is None
    else:
        assert res.value == expected
        assert LinSystem(n, weak=rows).satisfied_by(res.argpoint)
        assert sum(ci * xi for ci, xi in zip(c, res.argpoint)) == res.value


@settings(max_examples=300, deadline=None)
@given(systems())
def test_mixed_matches_fourier_motzkin(case):
    n, rows, tags, _ = case
    weak = [r for r, t in zip(rows, tags) if not t]
    strict = [r for r, t in zip(rows, tags) if t]
    sys = LinSystem(n, weak=weak, strict=strict)
    x = feasible_mixed(sys)
    assert (x is not None) == fourier_motzkin_feasible(n, weak, strict)
    if x is not None:
        assert sys.satisfied_by(x)


def test_random_larger_systems_witnesses_recheck():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 4)
        rows = [(tuple(rng.randint(-5, 5) for _ in range(n)), F(rng.randint(-6, 6), rng.randint(1, 3)))
                for _ in range(rng.randint(1, 5))]
        cut = rng.randint(0, len(rows))
        sys = LinSystem(n, weak=rows[:cut], strict=rows[cut:])
        x = feasible_mixed(sys)
        if x is not None:
            assert sys.satisfied_by(x)
        else:
            assert not fourier_motzkin_feasible(n, rows[:cut], rows[cut:])
