import pytest

from util.cardinal import ALEPH0, BETA, ONE, CardTag
from util.kposet import (Classification, MaximalNodeError, NotKPosetError, SingleMaxError,
                         check_k, check_proper, classify_single_max, d_local, d_value, e_count,
                         fan, is_simple, lambda_sequence, lambda_set, point, poset_card, script_h,
                         single_max, splittable_nodes, tent)
from util.oracle import GenParams, gen_proper
from util.poset import ClassRecord, SkeletonPoset

from samples import bare_chain, mixed_tent


def test_tent_document(tent_poset):
    report = check_k(tent_poset)
    assert report.is_k and report.is_proper
    assert report.poset_card == ALEPH0
    assert check_proper(tent_poset).is_proper
    assert script_h(tent_poset) == {'t1', 't2', 't'}
    assert lambda_set(tent_poset) == {'t'}
    assert d_value(tent_poset) == 1
    assert classify_single_max(tent_poset) == Classification.tent(2, ALEPH0)
    assert str(classify_single_max(tent_poset)) == 'tent k=2 card=aleph0'


def test_bare_chain_is_not_k():
    report = check_k(bare_chain())
    assert not report.is_k
    assert [(v.axiom, v.witness) for v in report.violations] == [('infinite-class', ('m', 'v', 'w'))]
    with pytest.raises(NotKPosetError):
        check_proper(bare_chain())


def test_empty_poset_is_not_k():
    report = check_k(SkeletonPoset())
    assert not report.is_k
    assert report.violations[0].axiom == 'nonempty'


def test_finite_class_over_a_chain():
    poset = SkeletonPoset(['t1', 't2', 't', 'm'], [('t1', 't'), ('t2', 't'), ('t', 'm')],
                          [ClassRecord.make(('m',), 't1', CardTag.finite(5)),
                           ClassRecord.make(('m',), 't2', ALEPH0)])
    with pytest.raises(NotKPosetError):
        check_proper(poset)


def test_unequal_infinite_classes_are_not_proper():
    report = check_proper(mixed_tent())
    assert not report.is_proper
    assert report.poset_card == BETA
    assert [v.witness for v in report.violations] == [('m', 't1', 'aleph0')]
    assert 'proper: no' in str(report)


def test_small_shapes_are_proper():
    assert check_proper(point()).is_proper
    assert check_proper(fan(ONE)).is_proper
    assert check_proper(fan(ALEPH0)).is_proper


def test_script_h(two_anchor):
    assert script_h(fan(ONE)) == {'u'}
    assert script_h(two_anchor) == {'u1', 'u2', 'h1', 'h2'}
    wedge = SkeletonPoset(['u1', 'u2', 'h'], [('u1', 'h'), ('u2', 'h')])
    assert script_h(wedge) == {'u1', 'u2', 'h'}


def test_lambda(two_anchor):
    assert lambda_set(fan(ONE)) == {'u'}
    assert lambda_sequence(two_anchor) == ['h1', 'h2']
    assert d_value(two_anchor) == 2
    assert two_anchor.mub(lambda_set(two_anchor)) == {'m'}


def test_lambda_keeps_lonely_minimal_nodes():
    poset = SkeletonPoset(['u1', 'u2', 'u3', 'h', 'm'],
                          [('u1', 'h'), ('u2', 'h'), ('h', 'm'), ('u3', 'm')],
                          [ClassRecord.make(('m',), 'u1', BETA), ClassRecord.make(('m',), 'u2', BETA)])
    assert lambda_sequence(poset) == ['h', 'u3']


def test_lambda_needs_height():
    with pytest.raises(MaximalNodeError):
        lambda_set(point())


def test_single_max(tent_poset, two_anchor_twice):
    assert single_max(tent_poset) == 'm'
    anonymous = SkeletonPoset(['u'], [], [ClassRecord.make((), 'u', ONE)])
    assert single_max(anonymous) == ClassRecord.make((), 'u', ONE)
    with pytest.raises(SingleMaxError):
        single_max(two_anchor_twice)
    with pytest.raises(SingleMaxError):
        single_max(fan(ALEPH0))


def test_d_local(tent_poset, two_anchor):
    assert d_local(tent_poset, 'm') == 1
    assert d_local(two_anchor, 'm') == 2
    assert d_local(fan(ONE), 'm') == 1
    with pytest.raises(MaximalNodeError):
        d_local(tent_poset, 't1')
    with pytest.raises(MaximalNodeError):
        d_local(point(), 'u')


def test_e(tent_poset, two_anchor, two_anchor_twice):
    assert e_count(tent_poset) == 0
    assert e_count(two_anchor) == 1
    assert e_count(two_anchor_twice) == 2
    assert splittable_nodes(two_anchor_twice) == ['L.m', 'R.m']
    assert is_simple(tent(2, BETA))
    assert is_simple(point())
    assert not is_simple(two_anchor)


def test_poset_card(tent_poset):
    assert poset_card(point()) == ONE
    assert poset_card(fan(CardTag.finite(3))) == CardTag.finite(4)
    assert poset_card(tent_poset) == ALEPH0


def test_classify_small_shapes(two_anchor, two_anchor_twice):
    assert classify_single_max(point()) == Classification.point()
    assert classify_single_max(fan(ONE)) == Classification.fan(ONE)
    assert str(Classification.fan(ONE)) == 'fan card=finite:1'
    result = classify_single_max(two_anchor)
    assert result.kind == Classification.NOT_SIMPLE
    assert str(result).startswith('not simple: ')
    with pytest.raises(SingleMaxError):
        classify_single_max(two_anchor_twice)


@pytest.mark.parametrize('card', [ALEPH0, BETA])
@pytest.mark.parametrize('k', [1, 2, 3, 4])
def test_classify_tents(k, card):
    assert classify_single_max(tent(k, card)) == Classification.tent(k, card)


def test_classify_one_sided_tent():
    poset = SkeletonPoset(['u1', 'm'], [('u1', 'm')], [ClassRecord.make(('m',), 'u1', BETA)])
    assert classify_single_max(poset) == Classification.tent(1, BETA)


@pytest.mark.parametrize('seed', range(200))
def test_classification_matches_d(seed):
    card = ALEPH0 if seed % 2 else BETA
    poset = gen_proper(GenParams(2 + seed % 3, 1, seed % 4, card, seed))
    result = classify_single_max(poset)
    assert (result.kind == Classification.NOT_SIMPLE) == (d_value(poset) > 1)
