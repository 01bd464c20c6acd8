import pytest
from hypothesis import settings

from util import document
from samples import TENT_DOC, two_anchor_pair, two_anchor_poset

settings.register_profile('ksplit', deadline=None, max_examples=60)
settings.load_profile('ksplit')


@pytest.fixture
def tent_doc():
    return TENT_DOC


@pytest.fixture
def tent_poset():
    return document.parse(TENT_DOC)


@pytest.fixture
def two_anchor():
    return two_anchor_poset()


@pytest.fixture
def two_anchor_twice():
    return two_anchor_pair()
