from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropicount.curve import END, REAL, from_edges, make_degree
from tropicount.geometry import (DEGENERATE, NOT_REALIZABLE, Conditions, NotSquare, Outcome,
                                 PlacedCurve, Singular, build_system, check_placement, place_curve,
                                 solve_exact)

from shapes import line_type

F = Fraction


def cond(*pts):
    return Conditions(real_points=pts)


def test_line_system_is_square():
    rows, rhs, cols, _ = build_system(line_type(), cond((0, 0), (3, 1)))
    assert len(rows) == len(cols) == 4


def test_line_placement():
    pc = place_curve(line_type(), cond((0, 0), (3, 1)))
    assert isinstance(pc, PlacedCurve)
    assert pc.positions[2] == (2, 0)
    assert all(l > 0 for l in pc.lengths.values())
    assert check_placement(pc, cond((0, 0), (3, 1)))


def test_wrong_side():
    out = place_curve(line_type(), cond((0, 0), (-1, -2)))
    assert out == Outcome(NOT_REALIZABLE, out.reason)


def test_point_on_vertex_is_degenerate():
    out = place_curve(line_type(), cond((0, 0), (2, 0)))
    assert isinstance(out, Outcome) and out.status == DEGENERATE


def test_fixed_end_adds_one_row():
    # the (0,-1) end becomes fixed and one real marking goes away
    deg = make_degree([((-1, 0), 1), ((0, -1), 1, True, F(2)), ((1, 1), 1)], r=1)
    t = from_edges(deg, {2: (REAL, 0), 3: (END, 0), 4: (END, 2), 5: (END, 1)},
                   [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    rows, _, cols, _ = build_system(t, Conditions(real_points=((0, 0),)))
    assert len(rows) == len(cols) == 3
    pc = place_curve(t, Conditions(real_points=((0, 0),)))
    # the line x = 2 carries the vertex, found at (2, 0)
    assert pc.positions[1] == (2, 0)


def test_not_square():
    with pytest.raises(NotSquare):
        build_system(line_type(), Conditions(real_points=((0, 0),)))


def test_solver_examples():
    assert solve_exact([[1, 0], [0, 1]], [F(5), F(-3, 2)]) == [5, F(-3, 2)]
    with pytest.raises(Singular):
        solve_exact([[1, 1], [2, 2]], [1, 2])
    assert solve_exact([[2, 1], [1, 1]], [3, 2]) == [1, 1]


small = st.integers(-6, 6)


@settings(max_examples=60)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4),
       st.lists(st.builds(Fraction, small, st.integers(1, 5)), min_size=4, max_size=4))
def test_solver_round_trip(matrix, rhs):
    try:
        x = solve_exact(matrix, rhs)
    except Singular:
        return
    for row, b in zip(matrix, rhs):
        assert sum(a * v for a, v in zip(row, x)) == b


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 40), st.integers(1, 40))
def test_line_round_trip_and_perturbation(x, y, s, t):
    # the second point sits up the (1,1) ray from a vertex s to the right
    p1, p2 = (F(x), F(y)), (F(x + s + t), F(y + t))
    pc = place_curve(line_type(), cond(p1, p2))
    assert isinstance(pc, PlacedCurve)
    assert check_placement(pc, cond(p1, p2))
    eps = F(1, 10 ** 6)
    moved = cond(p1, (p2[0] + eps, p2[1]))
    assert isinstance(place_curve(line_type(), moved), PlacedCurve)
