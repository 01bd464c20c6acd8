"""
    Splitting a single-maximum proper K-poset at its top, and refining a splitting back to
    properness.

    The top m is replaced by one fresh maximal node per element a_1 < ... < a_n of Lambda.
    A node v below m goes under m_j when a_j is the one Lambda element in L(v); otherwise it
    goes under every m_i whose a_i lies above the unique minimal node below v. Classes are
    re-keyed by the same rule applied to their low.
"""

import logging

from util.kposet import (chain_middle, lambda_sequence, poset_card, require_proper, script_h_star,
                         single_max, MaximalNodeError)
from util.poset import ClassRecord, PosetMap, SkeletonPoset, fresh_label
from util.splitting.certificate import SplittingCertificate, SplittingError, trivial_certificate

logger = logging.getLogger(__name__)


def _minimal_below(poset, v):
    lows = [w for w in poset.down_set(v) if not isinstance(w, ClassRecord) and w in poset.minimal_nodes()]
    if len(lows) != 1:
        raise SplittingError(f'`{v}` does not lie over exactly one minimal node')
    return lows[0]


def split_at(poset, m, *, avoid=()):
    """Split the single-maximum proper K-poset `poset` at its top `m`. Fresh labels m#1, m#2, ...
    avoid the labels of `poset` and `avoid`. When d = 1 the trivial certificate is returned."""
    top = single_max(poset)
    if top != m:
        raise MaximalNodeError(m, 'not the single maximal node')
    require_proper(poset)
    anchors_seq = lambda_sequence(poset)
    if len(anchors_seq) == 1:
        return trivial_certificate(poset, m)

    anchors = poset.nodes_of_height(1) & script_h_star(poset)
    taken = set(poset.nodes) | set(avoid)
    fresh = []
    for _ in anchors_seq:
        label = fresh_label(m, taken)
        taken.add(label)
        fresh.append(label)

    def tops(v):
        hits = [i for i, a in enumerate(anchors_seq) if poset.le(a, v)]
        if len(hits) == 1:
            return frozenset(fresh[i] for i in hits)
        low = _minimal_below(poset, v)
        return frozenset(fresh[i] for i, a in enumerate(anchors_seq)
                         if a in anchors and poset.le(low, a))

    rest = [v for v in poset.nodes if v != m]
    relation = [(a, b) for a, b in poset.relation() if a != m and b != m]
    relation += [(v, label) for v in rest for label in tops(v)]
    classes = []
    class_map = {}
    for record in poset.classes:
        rekeyed = ClassRecord(tops(record.low), record.low, record.card)
        classes.append(rekeyed)
        class_map[rekeyed] = record
    upper = SkeletonPoset([*rest, *fresh], relation, classes)
    node_map = {v: v for v in rest}
    node_map.update({label: m for label in fresh})

    logger.info(f'Split `{m}` along {anchors_seq} into {fresh}')
    cert = SplittingCertificate(upper, poset, m, frozenset(fresh),
                                PosetMap(upper, poset, node_map, class_map))
    return refine_certificate(cert)


def refine_certificate(cert):
    """Create or enlarge the class ({u}, w) to the size of the lower poset for every explicit
    maximal u and minimal w of the upper poset joined by a 2-chain, extending the map."""
    upper, lower, phi = cert.upper, cert.lower, cert.map
    total = poset_card(lower)
    image_by_key = {record.key: image for record, image in phi.class_map.items()}

    def image_of(ups, low):
        image = image_by_key.get((ups, low))
        if image is None:
            image = lower.class_of({phi(u) for u in ups}, phi(low))
        if image is None:
            key = ClassRecord(frozenset(phi(u) for u in ups), phi(low), total)
            raise SplittingError(f'Class {key} is missing from the lower poset')
        return image

    cards = {record.key: record.card for record in upper.classes}
    changed = []
    for u in sorted(upper.maximal_nodes()):
        for w in sorted(upper.minimal_nodes()):
            if chain_middle(upper, u, w) is None:
                continue
            key = (frozenset([u]), w)
            if cards.get(key) != total:
                cards[key] = total
                changed.append(ClassRecord(*key, total))
    if changed:
        logger.info(f'Refinement set {len(changed)} classes to {total}: {" ".join(map(str, changed))}')
        upper = SkeletonPoset(upper.nodes, upper.relation(),
                              [ClassRecord(ups, low, card) for (ups, low), card in cards.items()])
    class_map = {record: image_of(*record.key) for record in upper.classes}
    return cert._replace(upper=upper, map=PosetMap(upper, lower, dict(phi.node_map), class_map))


def refine(poset, cert):
    """`poset` enlarged to properness along the splitting map of `cert`."""
    return refine_certificate(cert._replace(upper=poset)).upper
