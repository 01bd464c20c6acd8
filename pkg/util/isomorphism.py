"""
    Isomorphism testing for skeleton posets.

    Skeletons are small, so a plain backtracking search over explicit nodes is enough. Nodes
    are only paired when their signatures agree (height, numbers of explicit nodes below and
    above, and the multiset of classes they are incident to), and every partial pairing must
    be monotone and order-reflexive. A complete pairing is accepted when it carries the class
    set of one poset exactly onto the other, card tags included.
"""

import logging
from collections import namedtuple, Counter

from util.poset import ClassRecord, PosetMap

logger = logging.getLogger(__name__)


class NotIsomorphic(namedtuple('NotIsomorphic', 'reason')):
    """Refutation returned by `iso_check`; falsy so callers can write `if iso_check(p, q):`."""
    __slots__ = ()

    def __bool__(self):
        return False

    def __str__(self):
        return f'not isomorphic: {self.reason}'


def node_signature(poset, u):
    incidence = []
    for record in poset.classes:
        if record.low == u:
            incidence.append(('low', str(record.card), len(record.ups)))
        if u in record.ups:
            incidence.append(('up', str(record.card), len(record.ups)))
    return poset.height(u), len(poset.below(u)), len(poset.above(u)), tuple(sorted(incidence))


def _class_signatures(poset):
    return Counter((str(record.card), len(record.ups)) for record in poset.classes)


class _Search:
    def __init__(self, source, target):
        self.source = source
        self.target = target
        self.steps = 0
        source_sigs = {u: node_signature(source, u) for u in source.nodes}
        target_sigs = {v: node_signature(target, v) for v in target.nodes}
        self.candidates = {u: [v for v in target.nodes if target_sigs[v] == sig]
                           for u, sig in source_sigs.items()}
        self.order = sorted(source.nodes, key=lambda u: (len(self.candidates[u]), u))
        self.target_classes = {(record.ups, record.low, record.card) for record in target.classes}

    def run(self):
        return self._extend({}, set())

    def _consistent(self, u, v, assignment):
        source, target = self.source, self.target
        return all(source.le(u, x) == target.le(v, y) and source.le(x, u) == target.le(y, v)
                   for x, y in assignment.items())

    def _extend(self, assignment, used):
        if len(assignment) == len(self.order):
            return self._classes_match(assignment)
        u = self.order[len(assignment)]
        for v in self.candidates[u]:
            if v in used:
                continue
            self.steps += 1
            if not self._consistent(u, v, assignment):
                continue
            assignment[u] = v
            used.add(v)
            found = self._extend(assignment, used)
            if found is not None:
                return found
            del assignment[u]
            used.discard(v)
        return None

    def _classes_match(self, assignment):
        images = {}
        for record in self.source.classes:
            image = (frozenset(assignment[w] for w in record.ups), assignment[record.low], record.card)
            if image not in self.target_classes:
                return None
            images[record] = ClassRecord(*image)
        return PosetMap(self.source, self.target, dict(assignment), images)


def iso_check(source, target):
    """An isomorphism `source -> target` as a PosetMap, or a NotIsomorphic refutation."""
    if len(source) != len(target):
        return NotIsomorphic(f'{len(source)} explicit nodes against {len(target)}')
    if len(source.classes) != len(target.classes):
        return NotIsomorphic(f'{len(source.classes)} classes against {len(target.classes)}')
    if _class_signatures(source) != _class_signatures(target):
        return NotIsomorphic('class cardinalities differ')
    source_sigs = Counter(node_signature(source, u) for u in source.nodes)
    target_sigs = Counter(node_signature(target, v) for v in target.nodes)
    if source_sigs != target_sigs:
        return NotIsomorphic('node signatures differ')

    search = _Search(source, target)
    found = search.run()
    logger.debug(f'Isomorphism search finished after {search.steps} steps')
    if found is None:
        return NotIsomorphic('no order-reflexive bijection matches the classes')
    return found
