"""
    Text formats: the JSON poset document, the certificate document read by verify-map, and
    DOT export.

    A poset document lists `nodes`, the `covers` among them and the anonymous `classes`:

        {"nodes": ["m", "t", "t1"], "covers": [["t", "m"], ["t1", "t"]],
         "classes": [{"up": ["m"], "low": "t1", "card": "aleph0"}]}

    Serialization is canonical, so equal posets give byte-identical text.
"""

import json
import logging
import os

from util.cardinal import CardTag, CardTagError
from util.poset import PosetMap, SkeletonPoset, ClassRecord, Violation, validate
from util.splitting import SplittingCertificate

logger = logging.getLogger(__name__)


class DocumentError(Exception):
    """Base class for document errors."""
    def __init__(self, message=None):
        super().__init__(message or 'Document error')


class DocumentSyntaxError(DocumentError):
    def __init__(self, line, column, msg):
        super().__init__(f'Syntax error at line {line}, column {column}: {msg}')
        self.line = line
        self.column = column
        self.msg = msg


class DocumentEncodingError(DocumentError):
    def __init__(self, path, position):
        super().__init__(f'`{path}` is not UTF-8 text (bad byte at offset {position})')
        self.path = path
        self.position = position


class DocumentSchemaError(DocumentError):
    def __init__(self, msg):
        super().__init__(f'Schema error: {msg}')
        self.msg = msg


class DocumentValidationError(DocumentError):
    def __init__(self, violations):
        super().__init__(f'Invalid poset: {violations[0]}')
        self.violations = violations


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.lineno, e.colno, e.msg)


def _labels(value, what):
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise DocumentSchemaError(f'`{what}` must be a list of labels')
    return value


def _field(obj, name, what, default=None):
    if not isinstance(obj, dict):
        raise DocumentSchemaError(f'{what} must be an object')
    if name not in obj:
        if default is not None:
            return default
        raise DocumentSchemaError(f'{what} is missing `{name}`')
    return obj[name]


def _card(text):
    if not isinstance(text, str):
        raise DocumentSchemaError(f'card `{text}` must be a string')
    try:
        return CardTag.parse(text)
    except CardTagError as e:
        raise DocumentSchemaError(str(e))


def _class_key(obj, known, what):
    ups = _labels(_field(obj, 'up', what), f'{what}.up')
    low = _field(obj, 'low', what)
    if not isinstance(low, str):
        raise DocumentSchemaError(f'`{what}.low` must be a label')
    for u in (*ups, low):
        if u not in known:
            raise DocumentSchemaError(f'unknown node `{u}` in {what}')
    return frozenset(ups), low


def parse(text):
    """The poset of a document: covers are closed transitively, duplicate class keys merged and
    the result validated."""
    doc = _load_json(text)
    nodes = _labels(_field(doc, 'nodes', 'document'), 'nodes')
    if not nodes:
        raise DocumentValidationError([Violation('nonempty', ())])
    if len(set(nodes)) != len(nodes):
        duplicates = sorted({u for u in nodes if nodes.count(u) > 1})
        raise DocumentSchemaError(f'duplicate labels {", ".join(duplicates)}')
    known = set(nodes)

    covers = _field(doc, 'covers', 'document', default=[])
    if not isinstance(covers, list):
        raise DocumentSchemaError('`covers` must be a list of pairs')
    relation = []
    for pair in covers:
        if not isinstance(pair, list) or len(pair) != 2:
            raise DocumentSchemaError(f'cover `{pair}` is not a pair')
        for u in _labels(pair, 'covers'):
            if u not in known:
                raise DocumentSchemaError(f'unknown node `{u}` in covers')
        relation.append(tuple(pair))

    classes = []
    entries = _field(doc, 'classes', 'document', default=[])
    if not isinstance(entries, list):
        raise DocumentSchemaError('`classes` must be a list')
    for i, entry in enumerate(entries):
        ups, low = _class_key(entry, known, f'classes[{i}]')
        classes.append(ClassRecord(ups, low, _card(_field(entry, 'card', f'classes[{i}]'))))

    poset = SkeletonPoset(nodes, relation, classes)
    violations = validate(poset)
    if violations:
        raise DocumentValidationError(violations)
    return poset


def _dump(data):
    return json.dumps(data, indent=2, ensure_ascii=False) + '\n'


def _class_entry(record):
    return {'up': sorted(record.ups), 'low': record.low}


def serialize(poset):
    return _dump({
        'nodes': list(poset.nodes),
        'covers': [list(edge) for edge in poset.covers()],
        'classes': [{**_class_entry(record), 'card': str(record.card)} for record in poset.classes],
    })


def _dot_id(label):
    return '"' + label.replace('\\', '\\\\').replace('"', '\\"') + '"'


def export_dot(poset, name='poset'):
    """DOT text: explicit nodes are boxes, each class one ellipse labeled with its card, and
    only the covering edges of the denoted poset are drawn."""
    lines = [f'digraph {_dot_id(name)} {{', '  rankdir=BT;']
    lines += [f'  {_dot_id(u)} [shape=box];' for u in poset.nodes]
    prefix = 'class'
    while any(u.startswith(prefix) for u in poset.nodes):
        prefix = '_' + prefix
    class_ids = {record: f'{prefix}{i}' for i, record in enumerate(poset.classes)}
    for record, class_id in class_ids.items():
        lines.append(f'  "{class_id}" [shape=ellipse, label="{record.card}"];')
    for a, b in poset.covers():
        if not any(record.low == a and b in record.ups for record in poset.classes):
            lines.append(f'  {_dot_id(a)} -> {_dot_id(b)};')
    for record, class_id in class_ids.items():
        lines.append(f'  {_dot_id(record.low)} -> "{class_id}";')
        lines += [f'  "{class_id}" -> {_dot_id(u)};' for u in sorted(record.ups)]
    lines.append('}')
    return '\n'.join(lines) + '\n'


def serialize_certificate(cert):
    phi = cert.map
    class_map = sorted(phi.class_map.items(), key=lambda item: item[0].sort_key)
    return _dump({
        'split_node': cert.split_node,
        'fiber': sorted(cert.fiber),
        'node_map': {u: phi.node_map[u] for u in sorted(phi.node_map)},
        'class_map': [{'from': _class_entry(source), 'to': _class_entry(target)}
                      for source, target in class_map],
    })


def parse_certificate(upper, lower, text):
    """A certificate over the two given posets from its document."""
    doc = _load_json(text)
    split_node = _field(doc, 'split_node', 'certificate')
    if not isinstance(split_node, str):
        raise DocumentSchemaError('`split_node` must be a label')
    fiber = _labels(_field(doc, 'fiber', 'certificate'), 'fiber')
    node_map = _field(doc, 'node_map', 'certificate')
    if not isinstance(node_map, dict) or not all(isinstance(v, str) for v in node_map.values()):
        raise DocumentSchemaError('`node_map` must map labels to labels')
    entries = _field(doc, 'class_map', 'certificate', default=[])
    if not isinstance(entries, list):
        raise DocumentSchemaError('`class_map` must be a list')
    class_map = {}
    for i, entry in enumerate(entries):
        what = f'class_map[{i}]'
        source = upper.class_of(*_class_key(_field(entry, 'from', what), set(upper.nodes), f'{what}.from'))
        target = lower.class_of(*_class_key(_field(entry, 'to', what), set(lower.nodes), f'{what}.to'))
        if source is None or target is None:
            raise DocumentSchemaError(f'{what} names a class that does not exist')
        class_map[source] = target
    return SplittingCertificate(upper, lower, split_node, frozenset(fiber),
                                PosetMap(upper, lower, dict(node_map), class_map))


def _read_text(path):
    with open(path, encoding='utf-8') as f:
        try:
            return f.read()
        except UnicodeDecodeError as e:
            raise DocumentEncodingError(path, e.start)


def read_poset(path):
    return parse(_read_text(path))


def read_certificate(upper, lower, path):
    return parse_certificate(upper, lower, _read_text(path))


def write_text(path, text):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info(f'Wrote {path}')
