import json

import pytest

from util import document
from util.cardinal import ALEPH0, BETA, CardTag
from util.kposet import Classification, classify_single_max, point, tent
from util.oracle import enumerate_skeletons, gen_proper, random_params
from util.poset import ClassRecord, SkeletonPoset
from util.splitting import split_at, verify_splitting

from samples import CYCLE_DOC


def test_parse_tent(tent_doc):
    poset = document.parse(tent_doc)
    assert poset == tent(2, ALEPH0)
    assert classify_single_max(poset) == Classification.tent(2, ALEPH0)


def test_parse_merges_duplicate_classes():
    doc = json.dumps({'nodes': ['u', 'v', 'm'], 'covers': [['u', 'v'], ['v', 'm']],
                      'classes': [{'up': ['m'], 'low': 'u', 'card': 'finite:2'},
                                  {'up': ['m'], 'low': 'u', 'card': 'aleph0'}]})
    assert document.parse(doc).class_of({'m'}, 'u').card == ALEPH0


def test_parse_defaults():
    assert document.parse('{"nodes": ["u"]}') == point()


def test_syntax_error():
    with pytest.raises(document.DocumentSyntaxError) as info:
        document.parse('{"nodes": [')
    assert info.value.line == 1


@pytest.mark.parametrize('text', [
    '[]',
    '{"covers": []}',
    '{"nodes": ["a", "a"]}',
    '{"nodes": ["a"], "covers": [["a", "b"]]}',
    '{"nodes": ["a"], "covers": [["a"]]}',
    '{"nodes": ["a", "b"], "covers": [["a", "b"]], "classes": [{"up": ["b"], "low": "a", "card": "omega"}]}',
    '{"nodes": ["a", "b"], "covers": [["a", "b"]], "classes": [{"up": ["b"], "low": "a", "card": "finite:²"}]}',
    '{"nodes": ["a", "b"], "covers": [["a", "b"]], "classes": [{"up": ["c"], "low": "a", "card": "beta"}]}',
    '{"nodes": ["a", "b"], "covers": [["a", "b"]], "classes": [{"up": ["b"], "card": "beta"}]}',
])
def test_schema_errors(text):
    with pytest.raises(document.DocumentSchemaError):
        document.parse(text)


def test_validation_errors():
    with pytest.raises(document.DocumentValidationError) as info:
        document.parse(CYCLE_DOC)
    assert [v.axiom for v in info.value.violations] == ['antisymmetry']
    with pytest.raises(document.DocumentValidationError) as info:
        document.parse('{"nodes": []}')
    assert info.value.violations[0].axiom == 'nonempty'


def test_serialize_is_canonical(tent_poset):
    text = document.serialize(tent_poset)
    assert text.endswith('}\n')
    shuffled = SkeletonPoset(['t', 'm', 't2', 't1'], [('t2', 't'), ('t', 'm'), ('t1', 't'), ('t1', 'm')],
                             [ClassRecord.make(('m',), 't2', ALEPH0), ClassRecord.make(('m',), 't1', ALEPH0)])
    assert document.serialize(shuffled) == text
    assert json.loads(text)['covers'] == [['t', 'm'], ['t1', 't'], ['t2', 't']]


def test_serialize_point():
    assert document.serialize(point()) == '{\n  "nodes": [\n    "u"\n  ],\n  "covers": [],\n  "classes": []\n}\n'


def test_round_trip_enumerated():
    for poset in enumerate_skeletons(4):
        assert document.parse(document.serialize(poset)) == poset


@pytest.mark.parametrize('seed', range(20))
def test_round_trip_generated(seed):
    poset = gen_proper(random_params(seed))
    assert document.parse(document.serialize(poset)) == poset


def test_dot_tent(tent_poset):
    dot = document.export_dot(tent_poset)
    assert dot.startswith('digraph "poset" {')
    assert dot.count('[shape=box]') == 4
    assert dot.count('shape=ellipse') == 2
    assert dot.count('->') == 7
    assert 'label="aleph0"' in dot


def test_dot_escapes_labels():
    poset = SkeletonPoset(['a"b', 'c\\d', 'class0'], [('a"b', 'class0'), ('c\\d', 'class0')],
                          [ClassRecord.make(('class0',), 'a"b', BETA)])
    dot = document.export_dot(poset)
    assert '"a\\"b" [shape=box];' in dot
    assert '"c\\\\d" -> "class0";' in dot
    assert '"_class0" [shape=ellipse, label="beta"];' in dot
    assert '"_class0" -> "class0";' in dot


def test_read_poset_rejects_bytes_that_are_not_utf8(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_bytes(b'{"nodes": ["\xff"]}')
    with pytest.raises(document.DocumentEncodingError) as info:
        document.read_poset(str(path))
    assert info.value.position == 12


def test_dot_drops_edge_under_class():
    poset = SkeletonPoset(['u', 'm'], [('u', 'm')], [ClassRecord.make(('m',), 'u', CardTag.finite(2))])
    dot = document.export_dot(poset)
    assert '"u" -> "m"' not in dot
    assert dot.count('->') == 2


def test_certificate_round_trip(two_anchor):
    cert = split_at(two_anchor, 'm')
    text = document.serialize_certificate(cert)
    parsed = document.parse_certificate(cert.upper, cert.lower, text)
    assert parsed.fiber == cert.fiber
    assert parsed.map.node_map == cert.map.node_map
    assert parsed.map.class_map == cert.map.class_map
    assert verify_splitting(parsed) == []


def test_certificate_with_unknown_class(two_anchor):
    cert = split_at(two_anchor, 'm')
    doc = json.loads(document.serialize_certificate(cert))
    doc['class_map'][0]['to'] = {'up': ['h1'], 'low': 'u1'}
    with pytest.raises(document.DocumentSchemaError):
        document.parse_certificate(cert.upper, cert.lower, json.dumps(doc))


def test_files(tmp_path, tent_poset):
    path = tmp_path / 'nested' / 'tent.json'
    document.write_text(str(path), document.serialize(tent_poset))
    assert document.read_poset(str(path)) == tent_poset
