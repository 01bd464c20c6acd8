"""
    Skeleton posets.

    A skeleton is the finite explicit part of a poset of dimension at most two together with
    anonymous height-one classes. Each class carries the explicit maximal nodes above its
    members, the single minimal node below them and a symbolic cardinality. The poset it
    denotes has card-many members per class, each strictly between its low and each of its
    ups and incomparable to everything else.

    Virtual nodes are named by explicit labels (strings) or by the ClassRecord of their class;
    all members of one class share the same up and down sets, so one handle stands for all.
"""

import functools
import logging
from collections import namedtuple, Counter

import networkx as nx
import numpy as np

import KSconstants
from util.cardinal import CardTag, ZERO, card_sum

logger = logging.getLogger(__name__)


# Error classes

class PosetError(Exception):
    """Base class for all poset related errors."""
    def __init__(self, message=None):
        super().__init__(message or 'Poset error')


class UnknownNodeError(PosetError):
    def __init__(self, node):
        super().__init__(f'`{node}` is not a node of the poset')
        self.node = node


class EmptySetError(PosetError):
    def __init__(self, operation):
        super().__init__(f'`{operation}` needs a nonempty set of nodes')
        self.operation = operation


class InvalidPosetError(PosetError):
    def __init__(self, violations):
        detail = f': {violations[0]}' if violations else ''
        super().__init__(f'Invalid poset ({len(violations)} violations){detail}')
        self.violations = violations


# Data classes

class Violation(namedtuple('Violation', 'axiom witness')):
    __slots__ = ()

    def __str__(self):
        return f'{self.axiom}: ' + ', '.join(str(w) for w in self.witness)


class ClassRecord(namedtuple('ClassRecord', 'ups low card')):
    __slots__ = ()

    @staticmethod
    def make(ups, low, card):
        return ClassRecord(frozenset(ups), low, card)

    @property
    def key(self):
        return self.ups, self.low

    @property
    def sort_key(self):
        return tuple(sorted(self.ups)), self.low

    def __str__(self):
        return '[{' + ','.join(sorted(self.ups)) + '}/' + f'{self.low}]'


def transitive_closure(le):
    """Warshall's algorithm on a boolean reachability matrix."""
    closed = le.copy()
    for k in range(closed.shape[0]):
        closed |= np.outer(closed[:, k], closed[k, :])
    return closed


def _merge_classes(classes):
    cards = {}
    for record in classes:
        key = (frozenset(record.ups), record.low)
        cards[key] = cards.get(key, ZERO) + record.card
    merged = [ClassRecord(ups, low, card) for (ups, low), card in cards.items() if not card.is_zero]
    merged.sort(key=lambda record: record.sort_key)
    return tuple(merged)


class SkeletonPoset:
    """An immutable skeleton poset.

    `relation` is any set of pairs (a, b) meaning a <= b; the reflexive-transitive closure is
    computed here. Duplicate class keys are merged by cardinal addition and empty classes are
    dropped. With `raw=True` the relation and the class list are stored verbatim so that
    `validate` can report what is wrong with an arbitrary candidate.
    """

    def __init__(self, nodes=(), relation=(), classes=(), *, raw=False):
        self.nodes = tuple(sorted(set(nodes)))
        self._index = {u: i for i, u in enumerate(self.nodes)}
        size = len(self.nodes)
        le = np.zeros((size, size), dtype=bool) if raw else np.eye(size, dtype=bool)
        for a, b in relation:
            le[self._idx(a), self._idx(b)] = True
        if not raw:
            le = transitive_closure(le)
            for record in classes:
                for u in (*record.ups, record.low):
                    self._idx(u)
        le.setflags(write=False)
        self._le = le
        self.classes = tuple(classes) if raw else _merge_classes(classes)
        self.raw = raw

    def _idx(self, u):
        try:
            return self._index[u]
        except (KeyError, TypeError):
            raise UnknownNodeError(u)

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, u):
        return u in self._index

    def __eq__(self, other):
        return (isinstance(other, SkeletonPoset) and self.nodes == other.nodes
                and self.classes == other.classes and np.array_equal(self._le, other._le))

    def __hash__(self):
        return hash((self.nodes, self.classes, self._le.tobytes()))

    def __repr__(self):
        classes = ' '.join(f'{record}x{record.card}' for record in self.classes)
        return f'SkeletonPoset(nodes={list(self.nodes)}, classes=[{classes}])'

    @property
    def is_empty(self):
        return not self.nodes

    @property
    def matrix(self):
        return self._le

    # Order queries on explicit nodes.

    def le(self, a, b):
        return bool(self._le[self._idx(a), self._idx(b)])

    def lt(self, a, b):
        return a != b and self.le(a, b)

    def relation(self):
        """All pairs (a, b) with a <= b, reflexive pairs included."""
        rows, cols = np.nonzero(self._le)
        return {(self.nodes[i], self.nodes[j]) for i, j in zip(rows, cols)}

    def strict_pairs(self):
        return {(a, b) for a, b in self.relation() if a != b}

    def above(self, u):
        """Explicit nodes strictly above u."""
        i = self._idx(u)
        return frozenset(self.nodes[j] for j in np.nonzero(self._le[i, :])[0] if j != i)

    def below(self, u):
        """Explicit nodes strictly below u."""
        i = self._idx(u)
        return frozenset(self.nodes[j] for j in np.nonzero(self._le[:, i])[0] if j != i)

    def covers(self):
        """Hasse edges among explicit nodes, sorted."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.strict_pairs())
        return sorted(nx.transitive_reduction(graph).edges())

    # Classes.

    def class_of(self, ups, low):
        """The stored class keyed (ups, low), or None."""
        return self._class_by_key.get((frozenset(ups), low))

    @functools.cached_property
    def _class_by_key(self):
        return {record.key: record for record in self.classes}

    def _check_handle(self, v):
        if isinstance(v, ClassRecord):
            if self._class_by_key.get(v.key) != v:
                raise UnknownNodeError(v)
        else:
            self._idx(v)

    def classes_below(self, u):
        """Classes whose members lie strictly below the explicit node u."""
        return frozenset(record for record in self.classes
                         if any(self.le(w, u) for w in record.ups))

    def classes_above(self, u):
        """Classes whose members lie strictly above the explicit node u."""
        return frozenset(record for record in self.classes if self.le(u, record.low))

    # Heights and dimension.

    @functools.cached_property
    def _virtual_graph(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_nodes_from(self.classes)
        graph.add_edges_from(self.strict_pairs())
        for record in self.classes:
            graph.add_edge(record.low, record)
            graph.add_edges_from((record, u) for u in record.ups)
        return graph

    @functools.cached_property
    def _heights(self):
        graph = self._virtual_graph
        heights = {}
        for v in nx.topological_sort(graph):
            heights[v] = max((heights[p] + 1 for p in graph.predecessors(v)), default=0)
        return heights

    def height(self, v):
        """Length of the longest chain strictly below v; class handles always sit at height one
        in a valid skeleton."""
        self._check_handle(v)
        return self._heights[v]

    @property
    def dim(self):
        return max(self._heights.values(), default=0)

    def nodes_of_height(self, h):
        """Explicit nodes of height h."""
        return frozenset(u for u in self.nodes if self._heights[u] == h)

    @functools.cached_property
    def _minimal(self):
        return frozenset(u for u in self.nodes if not self.below(u) and not self.classes_below(u))

    @functools.cached_property
    def _maximal(self):
        return frozenset(u for u in self.nodes if not self.above(u) and not self.classes_above(u))

    def minimal_nodes(self):
        return self._minimal

    def maximal_nodes(self):
        """Explicit maximal nodes; anonymous maxima are the classes with no ups."""
        return self._maximal

    def maximal_classes(self):
        return tuple(record for record in self.classes if not record.ups)

    def maximal_count(self):
        return CardTag.finite(len(self._maximal)) + card_sum(r.card for r in self.maximal_classes())

    # Up and down sets over virtual nodes.

    def up_set(self, v, strict=False):
        self._check_handle(v)
        if isinstance(v, ClassRecord):
            result = {y for y in self.nodes if any(self.le(w, y) for w in v.ups)}
        else:
            result = set(self.above(v)) | set(self.classes_above(v))
        if not strict:
            result.add(v)
        return frozenset(result)

    def down_set(self, v, strict=False):
        self._check_handle(v)
        if isinstance(v, ClassRecord):
            result = {y for y in self.nodes if self.le(y, v.low)}
        else:
            result = set(self.below(v)) | set(self.classes_below(v))
        if not strict:
            result.add(v)
        return frozenset(result)

    def virtual_le(self, a, b):
        """a <= b between virtual node handles; distinct members of one class are
        incomparable, so a handle is only compared with itself reflexively."""
        if a == b:
            return True
        return b in self.up_set(a, strict=True)

    def mub(self, nodes):
        nodes = list(nodes)
        if not nodes:
            raise EmptySetError('mub')
        bounds = functools.reduce(frozenset.intersection, (self.up_set(a) for a in nodes))
        return frozenset(b for b in bounds
                         if not any(c != b and self.virtual_le(c, b) for c in bounds))

    def mlb(self, nodes):
        nodes = list(nodes)
        if not nodes:
            raise EmptySetError('mlb')
        bounds = functools.reduce(frozenset.intersection, (self.down_set(a) for a in nodes))
        return frozenset(b for b in bounds
                         if not any(c != b and self.virtual_le(b, c) for c in bounds))

    def intersection_class(self, ups, lows):
        """The intersection class [B/C]: explicit nodes u with G(u)* = B and L(u)* = C, and the
        cardinality of the anonymous members sharing that profile."""
        ups, lows = frozenset(ups), frozenset(lows)
        explicit = frozenset(u for u in self.nodes
                             if self.up_set(u, strict=True) == ups
                             and self.down_set(u, strict=True) == lows)
        card = ZERO
        if len(lows) == 1 and all(not isinstance(b, ClassRecord) for b in ups):
            record = self.class_of(ups, next(iter(lows)))
            if record is not None:
                card = record.card
        return explicit, card

    # Derived posets.

    def restrict(self, keep):
        """The induced sub-poset on the virtual nodes satisfying `keep`. Classes survive when
        `keep` accepts their handle and their low; their ups are cut down to what is kept."""
        nodes = [u for u in self.nodes if keep(u)]
        kept = set(nodes)
        relation = [(a, b) for a, b in self.relation() if a in kept and b in kept]
        classes = [ClassRecord(record.ups & kept, record.low, record.card)
                   for record in self.classes if keep(record) and record.low in kept]
        return SkeletonPoset(nodes, relation, classes)

    def lower_set(self, m):
        """L(m) as a standalone poset."""
        members = self.down_set(m)
        return self.restrict(lambda v: v in members)

    def relabel(self, mapping):
        """A copy with explicit labels renamed through `mapping` (missing labels are kept)."""
        def rename(u):
            return mapping.get(u, u)

        return SkeletonPoset([rename(u) for u in self.nodes],
                             [(rename(a), rename(b)) for a, b in self.relation()],
                             [ClassRecord(frozenset(map(rename, r.ups)), rename(r.low), r.card)
                              for r in self.classes])

    def is_connected(self):
        graph = self._virtual_graph.to_undirected()
        if graph.number_of_nodes() == 0:
            return True
        return nx.is_connected(graph)


def disjoint_union(left, right, prefixes=('L.', 'R.')):
    """Disjoint union of two skeletons; labels are prefixed to keep them apart."""
    parts = [side.relabel({u: prefix + u for u in side.nodes}) for side, prefix in zip((left, right), prefixes)]
    return SkeletonPoset([u for part in parts for u in part.nodes],
                         [pair for part in parts for pair in part.relation()],
                         [record for part in parts for record in part.classes])


def fresh_label(base, taken, separator=KSconstants.FRESH_LABEL_SEPARATOR):
    """The first `base#i` (i = 1, 2, ...) not in `taken`."""
    i = 1
    while f'{base}{separator}{i}' in taken:
        i += 1
    return f'{base}{separator}{i}'


def validate(poset):
    """Every skeleton axiom that fails, as a list of Violations."""
    violations = []
    nodes = poset.nodes
    le = poset.matrix
    for i, u in enumerate(nodes):
        if not le[i, i]:
            violations.append(Violation('reflexivity', (u,)))
    antisymmetric = True
    for i, j in zip(*np.nonzero(le & le.T)):
        if i < j:
            antisymmetric = False
            violations.append(Violation('antisymmetry', (nodes[i], nodes[j])))
    step = (le.astype(np.int64) @ le.astype(np.int64)) > 0
    for i, j in zip(*np.nonzero(step & ~le)):
        middle = next(k for k in range(len(nodes)) if le[i, k] and le[k, j])
        violations.append(Violation('transitivity', (nodes[i], nodes[middle], nodes[j])))

    well_formed = True
    for record in poset.classes:
        problems = _class_problems(poset, record)
        if problems:
            well_formed = False
            violations.extend(Violation('class-well-formed', (str(record), problem))
                              for problem in problems)
    for (ups, low), count in Counter(record.key for record in poset.classes).items():
        if count > 1:
            violations.append(Violation('class-key-unique', (str(ClassRecord(ups, low, ZERO)),)))

    if antisymmetric and well_formed:
        for u in nodes:
            if poset.height(u) > 2:
                violations.append(Violation('dimension', (u,)))
    return violations


def _class_problems(poset, record):
    problems = []
    if record.card.is_zero:
        problems.append('empty class')
    if record.low not in poset:
        return problems + [f'unknown low `{record.low}`']
    unknown = [u for u in record.ups if u not in poset]
    if unknown:
        return problems + [f'unknown up `{u}`' for u in sorted(unknown)]
    if poset.below(record.low):
        problems.append(f'low `{record.low}` is not minimal')
    for u in sorted(record.ups):
        if u == record.low or not poset.le(record.low, u):
            problems.append(f'low `{record.low}` is not below `{u}`')
        if poset.above(u) or any(other.low == u for other in poset.classes):
            problems.append(f'up `{u}` is not maximal')
    return problems


# Poset maps

class PosetMap(namedtuple('PosetMap', 'source target node_map class_map class_shares',
                          defaults=(None,))):
    """An explicit-node map plus the induced class correspondence.

    `class_shares` is only used by maps out of restricted posets whose classes merged several
    target classes; it sends a source class to ((target class, card), ...).
    """
    __slots__ = ()

    def __call__(self, u):
        return self.node_map[u]

    def shares(self, record):
        if self.class_shares and record in self.class_shares:
            return self.class_shares[record]
        return ((self.class_map[record], record.card),)

    def preimage(self, v):
        return frozenset(u for u, image in self.node_map.items() if image == v)

    def image(self):
        return frozenset(self.node_map.values())

    def monotone_violations(self):
        violations = []
        for a, b in self.source.strict_pairs():
            if a in self.node_map and b in self.node_map and not self.target.le(self.node_map[a], self.node_map[b]):
                violations.append(Violation('monotone', (a, b)))
        return violations

    def coherence_violations(self):
        violations = []
        for record in self.source.classes:
            image = self.class_map.get(record)
            if image is None:
                violations.append(Violation('class-coherence', (str(record), 'unmapped')))
                continue
            if self.target.class_of(image.ups, image.low) != image:
                violations.append(Violation('class-coherence', (str(record), f'{image} is not a target class')))
            elif (image.low != self.node_map.get(record.low)
                  or image.ups != frozenset(self.node_map.get(u) for u in record.ups)):
                violations.append(Violation('class-coherence', (str(record), str(image))))
        return violations

    def inverse(self):
        return PosetMap(self.target, self.source,
                        {v: u for u, v in self.node_map.items()},
                        {v: u for u, v in self.class_map.items()})

    def compose(self, other):
        """self followed by other."""
        return PosetMap(self.source, other.target,
                        {u: other.node_map[v] for u, v in self.node_map.items()},
                        {k: other.class_map[v] for k, v in self.class_map.items()})


def identity_map(poset):
    return PosetMap(poset, poset, {u: u for u in poset.nodes}, {k: k for k in poset.classes})
