"""
    Symbolic cardinalities for anonymous node classes.

    Only three kinds of cardinal ever show up in the constructions we implement: finite
    counts, aleph_0, and the generic size beta of the ambient poset. They are totally ordered
    with every finite count below aleph_0 below beta, and sums of infinite cardinals collapse
    to the larger summand.
"""

from collections import namedtuple


class CardTagError(ValueError):
    def __init__(self, text):
        super().__init__(f'`{text}` is not a cardinality literal (expected finite:n, aleph0 or beta)')
        self.text = text


class CardTag(namedtuple('CardTag', 'kind count')):
    __slots__ = ()
    KINDS = ('finite', 'aleph0', 'beta')

    @staticmethod
    def finite(count):
        if count < 0:
            raise CardTagError(f'finite:{count}')
        return CardTag('finite', int(count))

    @staticmethod
    def parse(text):
        if text in ('aleph0', 'beta'):
            return CardTag(text, 0)
        kind, sep, count = text.partition(':')
        if kind != 'finite' or not sep or not (count.isascii() and count.isdigit()):
            raise CardTagError(text)
        return CardTag.finite(int(count))

    @property
    def is_finite(self):
        return self.kind == 'finite'

    @property
    def is_infinite(self):
        return not self.is_finite

    @property
    def is_zero(self):
        return self.is_finite and self.count == 0

    def _rank(self):
        return CardTag.KINDS.index(self.kind), self.count

    def __lt__(self, other):
        return self._rank() < other._rank()

    def __le__(self, other):
        return self._rank() <= other._rank()

    def __gt__(self, other):
        return self._rank() > other._rank()

    def __ge__(self, other):
        return self._rank() >= other._rank()

    def __add__(self, other):
        if self.is_finite and other.is_finite:
            return CardTag.finite(self.count + other.count)
        return max(self, other)

    def __radd__(self, other):
        # Lets sum() start from the integer 0.
        if other == 0:
            return self
        return NotImplemented

    def minus(self, other):
        """What is left of self after removing other; infinite minus smaller stays infinite."""
        if other >= self:
            return ZERO
        if self.is_finite:
            return CardTag.finite(self.count - other.count)
        return self

    def __str__(self):
        return f'finite:{self.count}' if self.is_finite else self.kind


ZERO = CardTag.finite(0)
ONE = CardTag.finite(1)
ALEPH0 = CardTag('aleph0', 0)
BETA = CardTag('beta', 0)


def card_sum(tags):
    return sum(tags, ZERO)
