from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ctxgraph.errors import InvalidInput
from ctxgraph.graph import anticycle, complete, cycle
from ctxgraph.invariants import packing_lp
from ctxgraph.lp import LinearProgram, UnboundedLP, certify, fmt, parse_fraction, simplex_max

import oracles

small = st.integers(0, 4)


@st.composite
def packing_programs(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 3))
    c = draw(st.lists(st.integers(-2, 4), min_size=n, max_size=n))
    A = draw(st.lists(st.lists(st.integers(-1, 3), min_size=n, max_size=n), min_size=m, max_size=m))
    b = draw(st.lists(small, min_size=m, max_size=m))
    u = draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    return LinearProgram(c, A, b, u)


def test_complete_graph_packing():
    res = simplex_max(packing_lp(complete(3)))
    assert res.value == 1


def test_c5_packing_is_five_halves():
    lp = packing_lp(cycle(5))
    res = simplex_max(lp)
    assert res.value == Fraction(5, 2)
    assert certify(lp, res)


def test_c7bar_packing_is_seven_thirds():
    lp = packing_lp(anticycle(7))
    res = simplex_max(lp)
    assert res.value == Fraction(7, 3)
    assert certify(lp, res)
    assert all(isinstance(v, Fraction) for v in res.solution)


@given(packing_programs())
def test_matches_vertex_enumeration(lp):
    res = simplex_max(lp)
    assert res.value == oracles.brute_lp_max(lp.c, lp.A, lp.b, lp.upper)
    assert certify(lp, res)


@given(packing_programs())
def test_solution_is_exactly_feasible(lp):
    res = simplex_max(lp)
    A, b = lp.rows()
    for row, rhs in zip(A, b):
        assert sum(a * x for a, x in zip(row, res.solution)) <= rhs
    assert all(x >= 0 for x in res.solution)


def test_unbounded():
    lp = LinearProgram([1, 1], [[1, -1]], [1], [None, None])
    with pytest.raises(UnboundedLP):
        simplex_max(lp)


def test_degenerate_problem_terminates():
    # classic cycling example for the largest-coefficient rule; Bland's rule terminates
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9],
         [Fraction(1, 2), -90, Fraction(-1, 50), 3],
         [0, 0, 1, 0]]
    lp = LinearProgram(c, A, [0, 0, 1], [None] * 4)
    res = simplex_max(lp)
    assert res.value == Fraction(1, 20)
    assert certify(lp, res)


def test_certify_rejects_wrong_value():
    lp = packing_lp(cycle(5))
    res = simplex_max(lp)
    bad = type(res)(res.value + 1, res.solution, res.dual, res.pivots)
    assert not certify(lp, bad)


@pytest.mark.parametrize("kwargs", [
    dict(c=[1, 1], A=[[1]], b=[1]),
    dict(c=[1], A=[[1]], b=[1, 2]),
    dict(c=[1], A=[[1]], b=[-1]),
])
def test_shape_validation(kwargs):
    with pytest.raises(InvalidInput):
        LinearProgram(**kwargs)


def test_fraction_text():
    assert fmt(Fraction(49, 10)) == "49/10"
    assert fmt(Fraction(5)) == "5"
    assert parse_fraction("7/3") == Fraction(7, 3)
