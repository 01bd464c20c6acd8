import pytest

from util.isomorphism import iso_check
from util.kposet import point
from util.oracle import gen_proper, random_params
from util.poset import SkeletonPoset
from util.splitting import FiberError, default_label, glue, simplify, split_at, verify_splitting


def test_glue_undoes_split(two_anchor):
    cert = split_at(two_anchor, 'm')
    quotient, glued = glue(cert.upper, cert.fiber)
    assert quotient == two_anchor
    assert glued.split_node == 'm'
    assert verify_splitting(glued) == []


def test_glue_single_node(tent_poset):
    quotient, cert = glue(tent_poset, ['m'])
    assert quotient == tent_poset
    assert cert.is_trivial


def test_glue_with_label(two_anchor):
    cert = split_at(two_anchor, 'm')
    quotient, _ = glue(cert.upper, cert.fiber, label='top')
    assert quotient == two_anchor.relabel({'m': 'top'})


def test_glue_rejects_bad_fibers(tent_poset, two_anchor):
    with pytest.raises(FiberError):
        glue(tent_poset, ['t'])
    with pytest.raises(FiberError):
        glue(point(), ['u'])
    with pytest.raises(FiberError):
        glue(tent_poset, [])
    with pytest.raises(FiberError):
        glue(tent_poset, ['zz'])
    cert = split_at(two_anchor, 'm')
    with pytest.raises(FiberError):
        glue(cert.upper, cert.fiber, label='h1')


def test_default_label(two_anchor):
    upper = split_at(two_anchor, 'm').upper
    assert default_label(upper, {'m#1', 'm#2'}) == 'm'
    assert default_label(upper, {'m#1'}) == 'm'
    assert default_label(two_anchor, {'m'}) == 'm'


def test_glue_label_avoids_existing_node():
    poset = SkeletonPoset(['u', 'a', 'b', 'a+b'], [('u', 'a'), ('u', 'b')])
    assert default_label(poset, {'a', 'b'}) == 'a+b#1'
    quotient, cert = glue(poset, {'a', 'b'})
    assert sorted(quotient.nodes) == ['a+b', 'a+b#1', 'u']
    assert quotient.le('u', 'a+b#1') and not quotient.le('u', 'a+b')
    assert cert.map('a+b') == 'a+b'
    assert verify_splitting(cert) == []


@pytest.mark.parametrize('seed', range(50))
def test_glue_round_trip(seed):
    poset = gen_proper(random_params(seed))
    for cert in simplify(poset).certificates():
        quotient, glued = glue(cert.upper, cert.fiber)
        assert iso_check(quotient, cert.lower)
        assert verify_splitting(glued) == []


@pytest.mark.parametrize('seed', range(100))
def test_glue_undoes_generated_split(seed):
    poset = gen_proper(random_params(seed, n_max2=1))
    cert = split_at(poset, 'm1')
    quotient, glued = glue(cert.upper, cert.fiber)
    assert iso_check(quotient, poset)
    assert verify_splitting(glued) == []
