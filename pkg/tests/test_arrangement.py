from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaomoto import FIXTURES
from qaomoto.arrangement import (
    Arrangement,
    ArrangementError,
    Line,
    intersection_points,
    load_arrangement,
    parse_arrangement,
    parse_rational,
    zaslavsky_count,
)

from reference_values import B3_WEIGHTS
from randarr import random_arrangements

THREE_CONCURRENT = '{"lines": [[1, 2, 4], [1, 0, 2], [1, -2, 0]], "weights": [1, 1, 1]}'


def test_parse_b3(b3):
    assert b3.n == 7
    assert b3.weights == B3_WEIGHTS


def test_b3_fixture_realizes_drawn_lines(b3):
    # y = 4 - x/2, y = 6 - x/2, y = x/2, y = x/2 + 2, x = 6, x = 4, x = 2
    drawn = [(1, 2, 8), (1, 2, 12), (1, -2, 0), (1, -2, -4), (1, 0, 6), (1, 0, 4), (1, 0, 2)]
    assert [(l.a, l.b, l.c) for l in b3.lines] == drawn


def test_parse_three_concurrent():
    arr = parse_arrangement(THREE_CONCURRENT)
    assert arr.n == 3
    assert arr.weights == (1, 1, 1)


def test_duplicate_line():
    with pytest.raises(ArrangementError, match="duplicate line"):
        parse_arrangement('{"lines": [[1, 1, 1], [2, 2, 2]], "weights": [1, 1]}')


def test_degenerate_line():
    with pytest.raises(ArrangementError, match=r"degenerate line \(a=b=0\)"):
        parse_arrangement('{"lines": [[0, 0, 1]], "weights": [1]}')


def test_weight_count_mismatch():
    with pytest.raises(ArrangementError, match="weight count mismatch"):
        parse_arrangement('{"lines": [[1, 0, 0]], "weights": [1, 2]}')


@pytest.mark.parametrize("text", ["{", "[]", '{"lines": [[1, 2]]}', '{"lines": [[1, 0, 0]], "weights": [1.5]}'])
def test_malformed_json(text):
    with pytest.raises(ArrangementError, match="malformed JSON"):
        parse_arrangement(text)


def test_weights_default_to_one():
    assert parse_arrangement('{"lines": [[1, 0, 0], [0, 1, 0]]}').weights == (1, 1)


def test_rationals_as_strings():
    arr = parse_arrangement('{"lines": [["1/2", "1/3", "1"]], "weights": [1]}')
    assert arr.lines[0] == Line(3, 2, 6)


def test_float_refused():
    with pytest.raises(ArrangementError):
        parse_rational(0.5)


def test_line_normalization():
    assert Line.make(-2, 4, 6) == Line(1, -2, -3)
    assert Line.make(0, -3, 6) == Line(0, 1, -2)


def test_three_concurrent_single_point():
    pts = intersection_points(parse_arrangement(THREE_CONCURRENT))
    assert len(pts) == 1
    assert [i + 1 for i in pts[0].incident] == [1, 2, 3]
    assert (pts[0].x, pts[0].y) == (2, 1)


def brute_force_excess(arr):
    """sum over points of (m_p - 1), counted from pairs: a point with m lines
    contributes C(m, 2) pairs, so group pairs by their meeting point."""
    meets = {}
    for i, j in combinations(range(arr.n), 2):
        p = arr.lines[i].meet(arr.lines[j])
        if p is not None:
            meets.setdefault(p, set()).update((i, j))
    return sum(len(s) - 1 for s in meets.values())


def test_b3_excess_is_twelve(b3):
    assert brute_force_excess(b3) == 12
    assert sum(p.multiplicity - 1 for p in intersection_points(b3)) == 12


def test_b3_points(b3):
    pts = intersection_points(b3)
    assert sorted(p.multiplicity for p in pts) == [2, 2, 2, 2, 3, 3, 3, 3]


def test_parallel_lines_no_points():
    arr = Arrangement.from_lines([(1, 0, 0), (1, 0, 1)])
    assert intersection_points(arr) == []


@pytest.mark.parametrize("arr", random_arrangements(50), ids=lambda a: f"n{a.n}")
def test_points_exact_and_sorted(arr):
    pts = intersection_points(arr)
    assert [(p.x, p.y) for p in pts] == sorted({(p.x, p.y) for p in pts})
    for p in pts:
        assert p.multiplicity >= 2
        for i in range(arr.n):
            assert (arr.lines[i].value(p.x, p.y) == 0) == (i in p.incident)
    assert sum(p.multiplicity - 1 for p in pts) == brute_force_excess(arr)


def test_zaslavsky_values(b3):
    assert zaslavsky_count(b3) == 20
    assert zaslavsky_count(parse_arrangement(THREE_CONCURRENT)) == 6


def test_json_round_trip(b3):
    import json

    assert parse_arrangement(json.dumps(b3.to_json())) == b3


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 7))
def test_normalization_scale_invariant(a, b, c, k):
    if a == 0 and b == 0:
        return
    assert Line.make(a, b, c) == Line.make(k * a, k * b, k * c) == Line.make(-a, -b, -c)
    assert Line.make(Fraction(a, k), Fraction(b, k), Fraction(c, k)) == Line.make(a, b, c)


def test_load_from_path():
    assert load_arrangement(FIXTURES / "three_lines.json").n == 3
