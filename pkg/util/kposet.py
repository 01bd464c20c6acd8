"""
    K-poset axioms and the structural invariants of single-maximum posets.

    A K-poset has dimension at most two, finitely many minimal and height-two nodes, finite
    mubs for pairs of minimal nodes, and an infinite class [u/w] over every chain u > v > w.
    It is proper when every class [u/w] with u maximal and w minimal is empty or as large as
    the whole poset.
"""

import logging
from collections import namedtuple

from util.cardinal import CardTag, ONE, card_sum
from util.poset import ClassRecord, SkeletonPoset, Violation, InvalidPosetError, validate

logger = logging.getLogger(__name__)


class KPosetError(Exception):
    """Base class for K-poset analysis errors."""
    def __init__(self, message=None):
        super().__init__(message or 'K-poset error')


class NotKPosetError(KPosetError):
    def __init__(self, report):
        detail = f': {report.violations[0]}' if report.violations else ''
        super().__init__(f'Not a K-poset{detail}')
        self.report = report


class NotProperError(KPosetError):
    def __init__(self, report):
        detail = f': {report.violations[0]}' if report.violations else ''
        super().__init__(f'Not a proper K-poset{detail}')
        self.report = report


class MaximalNodeError(KPosetError):
    def __init__(self, node, reason):
        super().__init__(f'`{node}` cannot be used here: {reason}')
        self.node = node
        self.reason = reason


class SingleMaxError(KPosetError):
    def __init__(self, count):
        super().__init__(f'Expected exactly one maximal node, found `{count}`')
        self.count = count


class KReport(namedtuple('KReport', 'is_k is_proper poset_card violations')):
    __slots__ = ()

    def __str__(self):
        lines = [f'k-poset: {"yes" if self.is_k else "no"}',
                 f'proper: {"yes" if self.is_proper else "no"}',
                 f'card: {self.poset_card}']
        lines += [f'violation {v}' for v in self.violations]
        return '\n'.join(lines)


class Classification(namedtuple('Classification', 'kind k card reason', defaults=(None, None, None))):
    __slots__ = ()
    POINT = 'point'
    FAN = 'fan'
    TENT = 'tent'
    NOT_SIMPLE = 'not-simple'

    @staticmethod
    def point():
        return Classification(Classification.POINT)

    @staticmethod
    def fan(card):
        return Classification(Classification.FAN, card=card)

    @staticmethod
    def tent(k, card):
        return Classification(Classification.TENT, k=k, card=card)

    @staticmethod
    def not_simple(reason):
        return Classification(Classification.NOT_SIMPLE, reason=reason)

    def __str__(self):
        if self.kind == Classification.POINT:
            return 'point'
        if self.kind == Classification.FAN:
            return f'fan card={self.card}'
        if self.kind == Classification.TENT:
            return f'tent k={self.k} card={self.card}'
        return f'not simple: {self.reason}'


def poset_card(poset):
    return CardTag.finite(len(poset)) + card_sum(record.card for record in poset.classes)


def _require_valid(poset):
    violations = validate(poset)
    if violations:
        raise InvalidPosetError(violations)


def _k_violations(poset):
    if poset.is_empty:
        return [Violation('nonempty', ())]
    violations = []
    # Anonymous members always sit at height one, so min U and H_2 stay finite.
    for record in poset.classes:
        if poset.height(record) != 1:
            violations.append(Violation('finite-extremes', (str(record),)))
    minimal = sorted(poset.minimal_nodes())
    for i, a in enumerate(minimal):
        for b in minimal[i + 1:]:
            if any(isinstance(v, ClassRecord) for v in poset.mub([a, b])):
                violations.append(Violation('finite-mub', (a, b)))
    for u in sorted(poset.nodes_of_height(2)):
        for w in sorted(poset.below(u) & poset.minimal_nodes()):
            middle = chain_middle(poset, u, w)
            if middle is None:
                continue
            explicit, card = poset.intersection_class({u}, {w})
            if not card.is_infinite:
                violations.append(Violation('infinite-class', (u, middle, w)))
    return violations


def chain_middle(poset, u, w):
    """Some virtual node strictly between w and u, or None when no 2-chain joins them."""
    for v in sorted(poset.below(u) & poset.above(w)):
        return v
    record = poset.class_of({u}, w)
    if record is not None:
        return str(record)
    for record in poset.classes:
        if record.low == w and any(poset.le(x, u) for x in record.ups):
            return str(record)
    return None


def _proper_violations(poset):
    total = poset_card(poset)
    violations = []
    for u in sorted(poset.maximal_nodes()):
        for w in sorted(poset.minimal_nodes()):
            explicit, card = poset.intersection_class({u}, {w})
            size = CardTag.finite(len(explicit)) + card
            if not size.is_zero and size != total:
                violations.append(Violation('proper', (u, w, str(size))))
    return violations


def check_k(poset):
    """K-poset axioms of a valid skeleton. `is_proper` is filled in as well, but only the
    K-axiom violations are listed."""
    _require_valid(poset)
    violations = _k_violations(poset)
    is_k = not violations
    is_proper = is_k and not _proper_violations(poset)
    return KReport(is_k, is_proper, poset_card(poset), violations)


def check_proper(poset):
    report = check_k(poset)
    if not report.is_k:
        raise NotKPosetError(report)
    violations = _proper_violations(poset)
    return KReport(True, not violations, report.poset_card, violations)


def require_proper(poset):
    report = check_proper(poset)
    if not report.is_proper:
        raise NotProperError(report)
    return report


def script_h(poset):
    """Minimal nodes plus the explicit height-one nodes over at least two minimal nodes."""
    return poset.minimal_nodes() | frozenset(u for u in poset.nodes_of_height(1)
                                             if len(poset.below(u)) >= 2)


def single_max(poset):
    """The unique maximal node: an explicit label, or the ClassRecord of a one-member class
    of anonymous maxima."""
    count = poset.maximal_count()
    if count != ONE:
        raise SingleMaxError(count)
    if poset.maximal_nodes():
        return next(iter(poset.maximal_nodes()))
    return poset.maximal_classes()[0]


def script_h_star(poset):
    return script_h(poset) - {single_max(poset)}


def lambda_set(poset):
    top = single_max(poset)
    if poset.height(top) == 0:
        raise MaximalNodeError(top, 'the maximal node has height zero')
    h_star = script_h_star(poset)
    anchors = poset.nodes_of_height(1) & h_star
    lonely = frozenset(v for v in h_star if not (poset.up_set(v) & anchors))
    return anchors | lonely


def lambda_sequence(poset):
    """Lambda in ascending label order."""
    return sorted(lambda_set(poset))


def d_value(poset):
    return len(lambda_set(poset))


def d_local(poset, m):
    if m not in poset.maximal_nodes():
        raise MaximalNodeError(m, 'not an explicit maximal node')
    if poset.height(m) == 0:
        raise MaximalNodeError(m, 'the maximal node has height zero')
    return d_value(poset.lower_set(m))


def splittable_nodes(poset):
    """Explicit maximal nodes of positive height whose local d exceeds one, sorted."""
    return [m for m in sorted(poset.maximal_nodes())
            if poset.height(m) > 0 and d_local(poset, m) > 1]


def e_count(poset):
    require_proper(poset)
    return len(splittable_nodes(poset))


def is_simple(poset):
    return e_count(poset) == 0


def classify_single_max(poset):
    top = single_max(poset)
    require_proper(poset)
    if poset.dim == 0:
        return Classification.point()
    d = d_value(poset)
    if d > 1:
        return Classification.not_simple(f'd = {d} at `{top}`')
    if poset.dim == 1:
        return Classification.fan(ONE)
    return Classification.tent(len(poset.minimal_nodes()), poset_card(poset))


# Simple single-maximum shapes.

def point(label='u'):
    return SkeletonPoset([label])


def fan(card, low='u'):
    """An alpha-fan: alpha maxima over one minimal node. Finite fans get explicit maxima
    (`m` alone, or `m1`, `m2`, ...); infinite ones a single class of anonymous maxima."""
    if card.is_zero:
        raise KPosetError('A fan needs at least one maximal node')
    if card.is_infinite:
        return SkeletonPoset([low], (), [ClassRecord.make((), low, card)])
    tops = ['m'] if card.count == 1 else [f'm{i}' for i in range(1, card.count + 1)]
    return SkeletonPoset([low, *tops], [(low, top) for top in tops])


def tent(k, card):
    """An alpha-tent: minimal t1..tk, t above all of them, m above t, and one class of card
    alpha between each ti and m."""
    if k < 1:
        raise KPosetError('A tent needs at least one minimal node')
    lows = [f't{i}' for i in range(1, k + 1)]
    relation = [(low, 't') for low in lows] + [('t', 'm')]
    classes = [ClassRecord.make(('m',), low, card) for low in lows]
    return SkeletonPoset([*lows, 't', 'm'], relation, classes)