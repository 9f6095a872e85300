import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaomoto.exactlinalg import CycloElem
from qaomoto.qring import (
    LaurentHalf,
    QNum,
    XWord,
    add,
    evaluate,
    from_laurent,
    gamma,
    mul,
    neg,
    normalize_word,
    parse_qnum,
    qint,
    to_laurent,
)

from reference_values import qint_at_minus_one, qint_at_zeta6

qnums = st.dictionaries(st.integers(1, 30), st.integers(-9, 9), max_size=5).map(QNum)


def laurent_word(w: XWord) -> LaurentHalf:
    """Evaluate a word directly under x_n -> [n]_q, in monomials of s."""
    total = LaurentHalf()
    for mono, c in w.terms:
        term = LaurentHalf({0: c})
        for n in mono:
            term = term * to_laurent(qint(n))
        total = total + term
    return total


words = st.lists(
    st.tuples(st.lists(st.integers(-8, 8), max_size=4), st.integers(-5, 5)),
    max_size=4,
).map(XWord)


# -- qint


def test_qint_zero():
    assert qint(0) == QNum()
    assert qint(0).is_zero()


def test_qint_two_is_s_plus_inverse():
    assert to_laurent(qint(2)) == LaurentHalf({1: 1, -1: 1})


def test_qint_negative():
    assert qint(-3) == neg(qint(3))
    assert qint(-3).coeffs == {3: -1}


# -- add / neg


def test_add_examples():
    assert add(qint(3), neg(qint(3))).is_zero()
    assert add(qint(2), qint(2)) == QNum({2: 2})
    assert add(QNum({5: 2, 1: 1}), neg(qint(1))) == QNum({5: 2})


# -- mul


def test_clebsch_gordan_3_2():
    assert mul(qint(3), qint(2)) == qint(4) + qint(2)


@pytest.mark.parametrize("n", range(1, 11))
def test_one_is_unit(n):
    assert mul(qint(n), qint(1)) == qint(n)


def test_two_squared_against_laurent():
    # (s + 1/s)^2 = s^2 + 2 + s^-2
    expected = from_laurent(LaurentHalf({2: 1, 0: 2, -2: 1}))
    assert expected == qint(3) + qint(1)
    assert mul(qint(2), qint(2)) == expected


def test_clebsch_gordan_matches_laurent_product_grid():
    for m in range(1, 31):
        for n in range(1, 31):
            assert to_laurent(mul(qint(m), qint(n))) == to_laurent(qint(m)) * to_laurent(qint(n))


@given(qnums, qnums, qnums)
def test_ring_axioms(x, y, z):
    assert mul(x, y) == mul(y, x)
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
    assert mul(x, qint(1)) == x


# -- Laurent round trip


def test_to_laurent_four():
    assert to_laurent(qint(4)) == LaurentHalf({3: 1, 1: 1, -1: 1, -3: 1})


def test_from_laurent_three():
    assert from_laurent(LaurentHalf({2: 1, 0: 1, -2: 1})) == qint(3)


def test_from_laurent_rejects_non_invariant():
    with pytest.raises(ValueError, match="not involution-invariant"):
        from_laurent(LaurentHalf({1: 1}))


@settings(max_examples=300)
@given(qnums)
def test_laurent_round_trip(x):
    p = to_laurent(x)
    assert p.is_invariant()
    assert from_laurent(p) == x


# -- gamma


def test_gamma_examples():
    assert gamma(qint(7)) == 7
    assert gamma(mul(qint(3), qint(2))) == 6
    assert gamma(QNum()) == 0


@given(qnums, qnums)
def test_gamma_homomorphism(x, y):
    assert gamma(mul(x, y)) == gamma(x) * gamma(y)
    assert gamma(add(x, y)) == gamma(x) + gamma(y)


# -- normalize_word


def test_normalize_x2_squared():
    w = XWord.var(2) * XWord.var(2)
    assert normalize_word(w) == from_laurent(laurent_word(w))
    assert normalize_word(w) == qint(3) + qint(1)


def test_normalize_generators_i_ii():
    assert normalize_word(XWord.var(0) * XWord.var(5) + XWord.var(1)) == qint(1)


def test_normalize_negative_index():
    w = XWord.var(-2) * XWord.var(3)
    assert normalize_word(w) == from_laurent(laurent_word(w))
    assert normalize_word(w) == neg(qint(4) + qint(2))


@settings(max_examples=300)
@given(words)
def test_normalize_matches_laurent_oracle(w):
    assert normalize_word(w) == from_laurent(laurent_word(w))


# -- evaluate


@pytest.mark.parametrize("n", range(1, 25))
def test_eval_at_i(n):
    assert evaluate(qint(n), CycloElem.zeta(4)) == qint_at_minus_one(n)


@pytest.mark.parametrize("n", range(1, 25))
def test_eval_at_zeta12(n):
    z = CycloElem.zeta(12)
    root3 = z + z.inverse()
    expected = qint_at_zeta6(n)
    expected = {"r": root3, "-r": -root3}.get(expected, expected)
    assert evaluate(qint(n), z) == expected


def test_eval_q_to_one():
    assert evaluate(qint(5), 1) == 5


def test_eval_zero_parameter():
    with pytest.raises(ValueError, match="zero parameter"):
        evaluate(qint(3), 0)


@given(qnums)
def test_eval_at_one_is_gamma(x):
    assert evaluate(x, 1) == gamma(x)


@given(qnums, st.floats(0.2, 3.0), st.floats(-3.0, 3.0))
def test_eval_matches_closed_form(x, r, theta):
    s = cmath.rect(r, theta)
    if abs(s - 1 / s) < 1e-3:
        return
    closed = sum(a * (s ** n - s ** -n) / (s - 1 / s) for n, a in x.coeffs.items())
    assert abs(evaluate(x, s) - closed) <= 1e-8 * (1 + abs(closed))


# -- text form


def test_render():
    assert str(QNum({5: 2, 3: -1, 1: 1})) == "2*[5] - [3] + 1"
    assert str(QNum()) == "0"
    assert str(-qint(4)) == "-[4]"


@given(qnums)
def test_render_parse_round_trip(x):
    assert parse_qnum(str(x)) == x


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_qnum("[3] [4]")
