"""
    Independent reference implementations used by the test-suite.

    Everything here works on a materialized poset: explicit nodes plus a few concrete members
    per class, with the order spelled out pair by pair, and recomputes the primary operations
    straight from their definitions. The module also enumerates small skeletons exhaustively
    and generates seeded proper K-posets.
"""

import itertools
import logging
from collections import namedtuple

import numpy as np

import KSconstants
from util.cardinal import CardTag, ONE, ALEPH0
from util.kposet import chain_middle
from util.poset import ClassRecord, SkeletonPoset

logger = logging.getLogger(__name__)


class OracleError(Exception):
    """Base class for oracle errors."""
    def __init__(self, message=None):
        super().__init__(message or 'Oracle error')


class BudgetExceededError(OracleError):
    def __init__(self, max_nodes):
        super().__init__(f'Enumeration is limited to {KSconstants.MAX_ENUMERATION_NODES} nodes, got `{max_nodes}`')
        self.max_nodes = max_nodes


class UnsatisfiableParamsError(OracleError):
    def __init__(self, params, reason):
        super().__init__(f'Cannot generate from {params}: {reason}')
        self.params = params
        self.reason = reason


class Materialized(namedtuple('Materialized', 'elements le handle')):
    """A finite poset: `le` holds every pair (a, b) with a <= b, `handle` maps an element back
    to the explicit label or ClassRecord it stands for."""
    __slots__ = ()

    def leq(self, a, b):
        return (a, b) in self.le

    def strictly_below(self, x):
        return [y for y in self.elements if y != x and self.leq(y, x)]

    def strictly_above(self, x):
        return [y for y in self.elements if y != x and self.leq(x, y)]

    def minimal(self):
        return [x for x in self.elements if not self.strictly_below(x)]

    def maximal(self):
        return [x for x in self.elements if not self.strictly_above(x)]


def materialize(poset, truncation=KSconstants.ORACLE_TRUNCATION):
    elements = list(poset.nodes)
    handle = {u: u for u in poset.nodes}
    for record in poset.classes:
        count = truncation if record.card.is_infinite else min(record.card.count, truncation)
        for i in range(count):
            member = (record, i)
            elements.append(member)
            handle[member] = record
    le = {(a, b) for a, b in poset.relation()}
    for member, record in handle.items():
        if not isinstance(record, ClassRecord):
            continue
        le.add((member, member))
        le.update((x, member) for x in poset.nodes if poset.le(x, record.low))
        le.update((member, y) for y in poset.nodes if any(poset.le(u, y) for u in record.ups))
    return Materialized(elements, frozenset(le), handle)


def _heights(mat):
    heights = {}

    def height(x):
        if x not in heights:
            heights[x] = max((height(y) + 1 for y in mat.strictly_below(x)), default=0)
        return heights[x]

    for x in mat.elements:
        height(x)
    return heights


def brute_height(poset, u, truncation=KSconstants.HEIGHT_TRUNCATION):
    return _heights(materialize(poset, truncation))[u]


def _extremes_of_bounds(mat, nodes, upper):
    if upper:
        bounds = [x for x in mat.elements if all(mat.leq(a, x) for a in nodes)]
        best = [b for b in bounds if not any(c != b and mat.leq(c, b) for c in bounds)]
    else:
        bounds = [x for x in mat.elements if all(mat.leq(x, a) for a in nodes)]
        best = [b for b in bounds if not any(c != b and mat.leq(b, c) for c in bounds)]
    return frozenset(mat.handle[b] for b in best)


def brute_mub(poset, nodes, truncation=KSconstants.ORACLE_TRUNCATION):
    return _extremes_of_bounds(materialize(poset, truncation), list(nodes), upper=True)


def brute_mlb(poset, nodes, truncation=KSconstants.ORACLE_TRUNCATION):
    return _extremes_of_bounds(materialize(poset, truncation), list(nodes), upper=False)


def _script_h(mat, heights):
    minimal = set(mat.minimal())
    return {x for x in mat.elements
            if x in minimal or (heights[x] == 1 and len([y for y in mat.strictly_below(x) if y in minimal]) >= 2)}


def brute_script_h(poset, truncation=KSconstants.ORACLE_TRUNCATION):
    mat = materialize(poset, truncation)
    return frozenset(mat.handle[x] for x in _script_h(mat, _heights(mat)))


def brute_lambda(poset, truncation=KSconstants.ORACLE_TRUNCATION):
    mat = materialize(poset, truncation)
    maxima = mat.maximal()
    if len(maxima) != 1:
        raise OracleError(f'{len(maxima)} maximal elements')
    heights = _heights(mat)
    h_star = _script_h(mat, heights) - {maxima[0]}
    anchors = {x for x in h_star if heights[x] == 1}
    lonely = {v for v in h_star if not any(mat.leq(v, a) for a in anchors)}
    return frozenset(mat.handle[x] for x in anchors | lonely)


def brute_connected(poset, truncation=KSconstants.HEIGHT_TRUNCATION):
    """Union-find over the comparability graph."""
    mat = materialize(poset, truncation)
    parent = {x: x for x in mat.elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in mat.le:
        parent[find(a)] = find(b)
    return len({find(x) for x in mat.elements}) <= 1


def brute_iso(left, right):
    """Exhaustive search over all bijections of explicit nodes."""
    if len(left) != len(right) or len(left.classes) != len(right.classes):
        return False
    target_classes = {(record.ups, record.low, record.card) for record in right.classes}
    for image in itertools.permutations(right.nodes):
        f = dict(zip(left.nodes, image))
        if any(left.le(a, b) != right.le(f[a], f[b]) for a in left.nodes for b in left.nodes):
            continue
        mapped = {(frozenset(f[u] for u in record.ups), f[record.low], record.card) for record in left.classes}
        if mapped == target_classes:
            return True
    return False


# Exhaustive enumeration

def _closed_relations(size):
    """Strict orders on range(size) compatible with the natural order, transitively closed."""
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    for mask in range(1 << len(pairs)):
        strict = {pair for bit, pair in enumerate(pairs) if mask >> bit & 1}
        if all((i, k) in strict for i, j in strict for j2, k in strict if j == j2):
            yield strict


def _canonical_form(size, strict, decorations):
    best = None
    for perm in itertools.permutations(range(size)):
        form = (tuple(sorted((perm[i], perm[j]) for i, j in strict)),
                tuple(sorted((perm[u], perm[w], str(card)) for (u, w), card in decorations)))
        if best is None or form < best:
            best = form
    return best


def enumerate_skeletons(max_nodes, min_nodes=1, max_classes=KSconstants.MAX_ENUMERATION_CLASSES):
    """Every valid skeleton with min_nodes..max_nodes explicit nodes up to relabeling, each
    eligible (maximal, minimal) pair joined by a 2-chain decorated with no class, one member
    or aleph_0 members, using at most `max_classes` classes."""
    if max_nodes > KSconstants.MAX_ENUMERATION_NODES:
        raise BudgetExceededError(max_nodes)
    labels = 'abcdefghij'
    seen = set()
    for size in range(max(min_nodes, 1), max_nodes + 1):
        names = labels[:size]
        for strict in _closed_relations(size):
            base = SkeletonPoset(names, [(names[i], names[j]) for i, j in strict])
            if base.dim > 2:
                continue
            eligible = [(u, w) for u in sorted(base.maximal_nodes()) for w in sorted(base.minimal_nodes())
                        if chain_middle(base, u, w) is not None]
            for choice in itertools.product((None, ONE, ALEPH0), repeat=len(eligible)):
                decorations = [(pair, card) for pair, card in zip(eligible, choice) if card is not None]
                if len(decorations) > max_classes:
                    continue
                index_pairs = [((names.index(u), names.index(w)), card) for (u, w), card in decorations]
                form = (size, _canonical_form(size, strict, index_pairs))
                if form in seen:
                    continue
                seen.add(form)
                classes = [ClassRecord.make((u,), w, card) for (u, w), card in decorations]
                yield SkeletonPoset(names, base.relation(), classes)
    logger.debug(f'Enumerated {len(seen)} skeletons up to {max_nodes} nodes')


# Seeded generation

class GenParams(namedtuple('GenParams', 'n_min n_max2 n_h card seed')):
    __slots__ = ()

    def __str__(self):
        return (f'n_min={self.n_min} n_max2={self.n_max2} n_h={self.n_h} '
                f'card={self.card} seed={self.seed}')


def _rng(seed):
    bit_generator = getattr(np.random, KSconstants.PRNG_ALGORITHM)(seed)
    return np.random.Generator(bit_generator)


def _check_params(params):
    if params.n_min < 1:
        raise UnsatisfiableParamsError(params, 'at least one minimal node is needed')
    if params.n_h > 0 and params.n_min < 2:
        raise UnsatisfiableParamsError(params, 'height-one nodes of H need two minimal nodes')
    if min(params.n_max2, params.n_h) < 0:
        raise UnsatisfiableParamsError(params, 'counts must be non-negative')
    if params.n_max2 > 0 and not params.card.is_infinite:
        raise UnsatisfiableParamsError(params, 'classes over 2-chains must be infinite')


def _pick(rng, items, low, high):
    """A random subset of `items` with between low and high members, in input order."""
    size = int(rng.integers(low, high + 1))
    chosen = set(rng.choice(len(items), size=size, replace=False).tolist())
    return [item for i, item in enumerate(items) if i in chosen]


def gen_proper(params):
    """A proper K-poset drawn deterministically from `params`."""
    _check_params(params)
    rng = _rng(params.seed)
    lows = [f'u{i}' for i in range(1, params.n_min + 1)]
    hs = [f'h{i}' for i in range(1, params.n_h + 1)]
    tops = [f'm{i}' for i in range(1, params.n_max2 + 1)]
    relation = []
    for h in hs:
        relation += [(w, h) for w in _pick(rng, lows, 2, len(lows))]

    if not tops:
        if hs or len(lows) > 1 or rng.random() < 0.5:
            return SkeletonPoset([*lows, *hs], relation)
        return SkeletonPoset([*lows, 'm'], [(lows[0], 'm')])

    below = {}
    for m in tops:
        below[m] = _pick(rng, hs, 1, len(hs)) if hs else []
        below[m] += [w for w in lows if rng.random() < 0.5]
    for x in hs + lows:
        if not any(x in items for items in below.values()) and not any(a == x for a, _ in relation):
            below[tops[int(rng.integers(len(tops)))]].append(x)
    classes = []
    for m in tops:
        if not below[m]:
            below[m].append(lows[int(rng.integers(len(lows)))])
        if not any(x in hs for x in below[m]):
            anchor = next(x for x in below[m] if x in lows)
            classes.append(ClassRecord.make((m,), anchor, params.card))
        relation += [(x, m) for x in below[m]]
    draft = SkeletonPoset([*lows, *hs, *tops], relation, classes)

    for w in lows:
        above = [m for m in tops if draft.le(w, m)]
        if len(above) >= 2 and rng.random() < 0.5:
            ups = _pick(rng, above, 2, len(above))
            card = ONE if rng.random() < 0.5 else params.card
            classes.append(ClassRecord.make(ups, w, card))
    draft = SkeletonPoset(draft.nodes, draft.relation(), classes)

    # Every 2-chain needs a full-size class over it.
    singles = [ClassRecord.make((m,), w, params.card) for m in tops for w in lows
               if chain_middle(draft, m, w) is not None and draft.class_of({m}, w) is None]
    poset = SkeletonPoset(draft.nodes, draft.relation(), [*draft.classes, *singles])
    logger.debug(f'Generated {len(poset)} nodes and {len(poset.classes)} classes from {params}')
    return poset


def random_params(seed, *, n_max2=None, card=None):
    """Parameters for the seeded suites: two to four minimal nodes, two to n_min H nodes and
    one to four maxima of height two."""
    rng = _rng(seed)
    n_min = int(rng.integers(2, 5))
    n_h = int(rng.integers(2, n_min + 1))
    if n_max2 is None:
        n_max2 = int(rng.integers(1, 5))
    return GenParams(n_min, n_max2, n_h, card or CardTag('beta', 0), seed)
