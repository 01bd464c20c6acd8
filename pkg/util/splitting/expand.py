"""
    Extending a poset map X -> Z to a map g: Y -> Z with Y = X + (Z - f(X)).

    Inside X and inside Z - f(X) the order is inherited; across the two parts x <= z holds
    when f(x) <= z in Z. Classes of X are spread over the Z classes they cover (see
    `PosetMap.class_shares`), and whatever part of a Z class is not covered is copied over.
"""

import logging
from collections import namedtuple

from util.cardinal import ZERO
from util.kposet import d_local
from util.poset import ClassRecord, PosetMap, SkeletonPoset, Violation, fresh_label
from util.splitting.certificate import (DownSetConditionError, SplittingCertificate, SplittingError,
                                        verify_splitting)

logger = logging.getLogger(__name__)


class Expansion(namedtuple('Expansion', 'poset map')):
    __slots__ = ()


def _coverage(f):
    covered = {}
    for record in f.source.classes:
        for target, card in f.shares(record):
            covered[target] = covered.get(target, ZERO) + card
    return covered


def _check_down_sets(f, covered):
    source, target = f.source, f.target
    image = f.image()
    for x in source.nodes:
        missing = sorted(z for z in target.below(f(x)) if z not in image)
        missing += sorted(str(record) for record in target.classes_below(f(x))
                          if covered.get(record, ZERO) < record.card)
        if missing:
            raise DownSetConditionError(x, missing)


def expand(f):
    """The extension of `f` to all of its target. Raises DownSetConditionError when the down
    set of some f(x) is not inside the image of f."""
    source, target = f.source, f.target
    covered = _coverage(f)
    _check_down_sets(f, covered)
    image = f.image()

    taken = set(source.nodes)
    rename = {}
    for z in target.nodes:
        if z in image:
            continue
        rename[z] = z if z not in taken else fresh_label(z, taken)
        taken.add(rename[z])
    if any(z != label for z, label in rename.items()):
        logger.info(f'Expansion relabeled {sorted((z, l) for z, l in rename.items() if z != l)}')

    relation = list(source.relation())
    relation += [(rename[a], rename[b]) for a, b in target.relation() if a in rename and b in rename]
    for x in source.nodes:
        relation += [(x, rename[z]) for z in target.above(f(x)) if z in rename]
        relation += [(rename[z], x) for z in target.below(f(x)) if z in rename]

    preimage_of_min = {}
    for x in source.minimal_nodes():
        preimage_of_min.setdefault(f(x), []).append(x)

    classes = []
    class_map = {}
    for record in source.classes:
        for image_class, card in f.shares(record):
            ups = record.ups | frozenset(rename[z] for z in image_class.ups if z in rename)
            new = ClassRecord(ups, record.low, card)
            classes.append(new)
            class_map[new.key] = image_class
    for image_class in target.classes:
        left = image_class.card.minus(covered.get(image_class, ZERO))
        if left.is_zero:
            continue
        if image_class.low in rename:
            low = rename[image_class.low]
        else:
            lows = preimage_of_min.get(image_class.low, [])
            if len(lows) != 1:
                raise SplittingError(f'Class {image_class} has no unique low in the source')
            low = lows[0]
        new = ClassRecord(frozenset(rename[z] for z in image_class.ups), low, left)
        classes.append(new)
        class_map[new.key] = image_class

    poset = SkeletonPoset(sorted(taken), relation, classes)
    node_map = {x: f(x) for x in source.nodes}
    node_map.update({label: z for z, label in rename.items()})
    g = PosetMap(poset, target, node_map, {record: class_map[record.key] for record in poset.classes})
    return Expansion(poset, g)


def expansion_violations(f, expansion, local=None):
    """Literal check of the extension properties: g restricted to X is f; maxima of X sent to
    maxima of Z stay maximal with the same local d; and, given `local` splitting X onto f(X)
    whose maxima are maximal in Z, g is a splitting map."""
    source, target = f.source, f.target
    poset, g = expansion
    violations = []
    for x in source.nodes:
        if x not in poset or g(x) != f(x):
            violations.append(Violation('restriction', (x,)))
    for record in source.classes:
        expected = sorted(str(image) for image, _ in f.shares(record))
        found = sorted(str(g.class_map[other]) for other in poset.classes
                       if other.low == record.low and other.ups & frozenset(source.nodes) == record.ups)
        if expected != found:
            violations.append(Violation('restriction', (str(record),)))
    if violations:
        return violations

    for n in sorted(source.maximal_nodes()):
        if f(n) not in target.maximal_nodes():
            continue
        if n not in poset.maximal_nodes():
            violations.append(Violation('expansion-maximal', (n,)))
        elif source.height(n) > 0 and d_local(source, n) != d_local(poset, n):
            violations.append(Violation('expansion-d', (n, str(d_local(source, n)), str(d_local(poset, n)))))

    if local is not None and all(f(n) in target.maximal_nodes() for n in source.maximal_nodes()):
        cert = SplittingCertificate(poset, target, local.split_node, local.fiber, g)
        violations += [Violation('expansion-splitting', (str(v),)) for v in verify_splitting(cert)]
    return violations