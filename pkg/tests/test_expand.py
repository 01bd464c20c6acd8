import pytest

from util.kposet import d_local
from util.oracle import gen_proper, random_params
from util.poset import PosetMap, SkeletonPoset, identity_map
from util.splitting import DownSetConditionError, expand, expansion_violations, local_split


def test_identity_expands_to_itself(tent_poset):
    f = identity_map(tent_poset)
    expansion = expand(f)
    assert expansion.poset == tent_poset
    assert expansion.map.node_map == f.node_map
    assert expansion_violations(f, expansion) == []


def test_down_sets_must_be_covered(tent_poset):
    f = PosetMap(SkeletonPoset(['m']), tent_poset, {'m': 'm'}, {})
    with pytest.raises(DownSetConditionError) as info:
        expand(f)
    assert info.value.node == 'm'
    assert {'t', 't1', 't2'} <= set(info.value.missing)


def test_expand_lower_set_split(two_anchor_twice):
    local, f = local_split(two_anchor_twice, 'L.m')
    expansion = expand(f)
    poset = expansion.poset
    assert set(poset.nodes) == set(two_anchor_twice.nodes) - {'L.m'} | {'L.m#1', 'L.m#2'}
    assert poset.lower_set('R.m') == two_anchor_twice.lower_set('R.m')
    assert d_local(poset, 'L.m#1') == 1
    assert expansion_violations(f, expansion, local) == []


def test_lower_set_of_a_simple_node_does_not_split(tent_poset):
    local, f = local_split(tent_poset, 'm')
    assert local.is_trivial
    assert f is None


@pytest.mark.parametrize('seed', range(40))
def test_expand_generated(seed):
    poset = gen_proper(random_params(seed))
    for n in sorted(poset.maximal_nodes()):
        local, f = local_split(poset, n)
        if f is None:
            continue
        expansion = expand(f)
        assert expansion_violations(f, expansion, local) == []
