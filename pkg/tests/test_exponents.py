import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hlnorm.exponents import INF, Exponent, conjugate, make_pair

exponents_ge1 = st.one_of(
    st.fractions(min_value=1, max_value=50, max_denominator=30),
    st.just("inf"),
)
exponents_pos = st.one_of(
    st.fractions(min_value=Fraction(1, 20), max_value=50, max_denominator=30).filter(lambda f: f > 0),
    st.just("inf"),
)


@pytest.mark.parametrize("p, expected", [(2, 2), (1, "inf"), (Fraction(4, 3), 4), ("inf", 1), ("3/2", 3)])
def test_conjugate_examples(p, expected):
    assert conjugate(p) == Exponent.of(expected)


def test_conjugate_rejects_below_one():
    with pytest.raises(ValueError):
        conjugate(Fraction(1, 2))


@given(exponents_ge1)
def test_conjugate_involution(p):
    assert conjugate(conjugate(p)) == Exponent.of(p)


@given(exponents_ge1, exponents_ge1)
def test_conjugate_order_reversing(p, p2):
    p, p2 = Exponent.of(p), Exponent.of(p2)
    if p <= p2:
        assert conjugate(p) >= conjugate(p2)


@given(exponents_ge1)
def test_conjugate_reciprocals_sum_to_one(p):
    assert Exponent.of(p).inv + conjugate(p).inv == 1


@pytest.mark.parametrize("p, q, r, s", [
    (2, 1, 2, 2),
    ("inf", 1, 1, "4/3"),
    (3, 3, "inf", 4),
    (4, 2, 4, "8/3"),
])
def test_make_pair_examples(p, q, r, s):
    pair = make_pair(p, q)
    assert pair.r == Exponent.of(r)
    assert pair.s == Exponent.of(s)


def test_make_pair_rejects_q_above_p():
    with pytest.raises(ValueError):
        make_pair(2, 3)


def test_p_conj_absent_below_one():
    pair = make_pair(Fraction(1, 2), Fraction(1, 3))
    assert pair.p_conj is None and pair.q_conj is None
    assert make_pair(2, Fraction(1, 2)).q_conj is None


@given(exponents_pos, exponents_pos)
def test_index_reconstruction_exact(a, b):
    p, q = max(Exponent.of(a), Exponent.of(b)), min(Exponent.of(a), Exponent.of(b))
    pair = make_pair(p, q)
    assert pair.q.inv == pair.r.inv + pair.p.inv
    assert pair.r.is_infinite == (pair.p == pair.q)
    assert pair.s.inv == pair.r.inv / 2 + Fraction(1, 4)


@given(exponents_pos, exponents_pos)
def test_r_s_ordering(a, b):
    pair = make_pair(max(Exponent.of(a), Exponent.of(b)), min(Exponent.of(a), Exponent.of(b)))
    r, s = pair.r, pair.s
    if r <= 2:
        assert r <= s <= 2
    if r >= 2:
        assert s <= r


@pytest.mark.parametrize("token, value", [
    ("inf", math.inf), ("Infinity", math.inf), (math.inf, math.inf),
    ("4/3", 4 / 3), ("2.5", 2.5), (3, 3.0), (0.5, 0.5),
])
def test_parse(token, value):
    assert Exponent.of(token).value == value


@pytest.mark.parametrize("bad", [0, -1, "0", "abc", "-inf", math.nan, "1/0"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Exponent.of(bad)


def test_infinity_exact():
    assert Exponent.of("inf") is not None and Exponent.of("inf").inv == 0
    assert INF.is_infinite and INF.exact is None
    assert str(Exponent.of("4/3")) == "4/3" and str(INF) == "inf"
