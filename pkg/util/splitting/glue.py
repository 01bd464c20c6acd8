import logging

import KSconstants
from util.poset import ClassRecord, PosetMap, SkeletonPoset, fresh_label
from util.splitting.certificate import FiberError, SplittingCertificate

logger = logging.getLogger(__name__)


def default_label(poset, fiber):
    """The common stem before the fresh-label separator when every fiber label has it and it
    is free; otherwise the lone fiber label, or the fiber labels joined with `+` when no other
    node has that name, or a fresh label built on the join."""
    others = set(poset.nodes) - set(fiber)
    separator = KSconstants.FRESH_LABEL_SEPARATOR
    stems = {label.split(separator)[0] for label in fiber}
    if all(separator in label for label in fiber) and len(stems) == 1:
        stem = stems.pop()
        if stem not in others:
            return stem
    if len(fiber) == 1:
        return next(iter(fiber))
    joined = '+'.join(sorted(fiber))
    if joined not in others:
        return joined
    return fresh_label(joined, set(poset.nodes), separator)


def _check_fiber(poset, fiber):
    if not fiber:
        raise FiberError('', 'the fiber is empty')
    for n in sorted(fiber):
        if n not in poset:
            raise FiberError(n, 'unknown node')
        if n not in poset.maximal_nodes():
            raise FiberError(n, 'not a maximal node')
        if poset.height(n) == 0:
            raise FiberError(n, 'height zero')


def glue(poset, fiber, label=None):
    """Identify the maxima in `fiber` to a single node. Returns the quotient and the
    certificate that `poset` splits it at the glued node."""
    fiber = frozenset(fiber)
    _check_fiber(poset, fiber)
    if label is None:
        label = default_label(poset, fiber)
    elif label in poset and label not in fiber:
        raise FiberError(label, 'label already names another node')

    def rename(u):
        return label if u in fiber else u

    nodes = [rename(u) for u in poset.nodes]
    relation = [(rename(a), rename(b)) for a, b in poset.relation()]
    classes = [ClassRecord(frozenset(map(rename, record.ups)), record.low, record.card)
               for record in poset.classes]
    quotient = SkeletonPoset(nodes, relation, classes)
    node_map = {u: rename(u) for u in poset.nodes}
    class_map = {record: quotient.class_of(map(rename, record.ups), record.low) for record in poset.classes}
    logger.info(f'Glued {sorted(fiber)} into `{label}`')
    cert = SplittingCertificate(poset, quotient, label, fiber, PosetMap(poset, quotient, node_map, class_map))
    return quotient, cert
