import pytest
from hypothesis import given, strategies as st

from util.cardinal import ALEPH0, BETA, ONE, ZERO, CardTag, CardTagError, card_sum

cards = st.one_of(st.integers(min_value=0, max_value=50).map(CardTag.finite),
                  st.just(ALEPH0), st.just(BETA))


@pytest.mark.parametrize('text, expected', [
    ('finite:0', ZERO),
    ('finite:3', CardTag('finite', 3)),
    ('aleph0', ALEPH0),
    ('beta', BETA),
])
def test_parse(text, expected):
    assert CardTag.parse(text) == expected
    assert str(expected) == text


@pytest.mark.parametrize('text', ['finite:', 'finite:-1', 'finite:x', 'finite:²', 'finite:٣', 'omega', 'Aleph0', ''])
def test_parse_rejects(text):
    with pytest.raises(CardTagError):
        CardTag.parse(text)


def test_order():
    assert CardTag.finite(2) < CardTag.finite(3) < ALEPH0 < BETA
    assert max(ALEPH0, CardTag.finite(10 ** 9)) == ALEPH0


def test_addition():
    assert CardTag.finite(2) + CardTag.finite(3) == CardTag.finite(5)
    assert CardTag.finite(7) + ALEPH0 == ALEPH0
    assert ALEPH0 + BETA == BETA
    assert sum([ONE, ONE, ONE]) == CardTag.finite(3)
    assert card_sum([]) == ZERO


def test_minus():
    assert CardTag.finite(5).minus(CardTag.finite(2)) == CardTag.finite(3)
    assert BETA.minus(ALEPH0) == BETA
    assert ALEPH0.minus(BETA) == ZERO
    assert ALEPH0.minus(ALEPH0) == ZERO


def test_zero_and_kinds():
    assert ZERO.is_zero and ZERO.is_finite
    assert not ONE.is_zero
    assert ALEPH0.is_infinite and BETA.is_infinite


@given(cards, cards)
def test_addition_commutes(a, b):
    assert a + b == b + a


@given(cards, cards, cards)
def test_addition_associates(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(cards, cards)
def test_sum_is_an_upper_bound(a, b):
    assert a <= a + b and b <= a + b
