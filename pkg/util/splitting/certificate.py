import logging
from collections import namedtuple

from util.cardinal import card_sum
from util.kposet import d_local
from util.poset import ClassRecord, Violation, validate, identity_map

logger = logging.getLogger(__name__)


class SplittingError(Exception):
    """Base class for errors raised while splitting, expanding or gluing."""
    def __init__(self, message=None):
        super().__init__(message or 'Splitting error')


class FiberError(SplittingError):
    def __init__(self, node, reason):
        super().__init__(f'`{node}` cannot be in a fiber: {reason}')
        self.node = node
        self.reason = reason


class DownSetConditionError(SplittingError):
    def __init__(self, node, missing):
        super().__init__(f'Down set of the image of `{node}` is not covered: {", ".join(missing)}')
        self.node = node
        self.missing = missing


class UnverifiedCertificateError(SplittingError):
    def __init__(self, violations):
        super().__init__(f'Certificate does not verify: {violations[0]}')
        self.violations = violations


class SplittingCertificate(namedtuple('SplittingCertificate', 'upper lower split_node fiber map')):
    """Witness that `upper` splits `lower` at `split_node`: `map` sends the `fiber` of maxima
    of `upper` onto the split node and is bijective everywhere else."""
    __slots__ = ()

    @property
    def is_trivial(self):
        return len(self.fiber) == 1


def trivial_certificate(poset, m):
    return SplittingCertificate(poset, poset, m, frozenset([m]), identity_map(poset))


def verify_splitting(cert):
    """All violated splitting axioms of `cert`, as Violations."""
    upper, lower, m, fiber, phi = cert
    violations = [Violation('poset-invalid', ('upper', str(v))) for v in validate(upper)]
    violations += [Violation('poset-invalid', ('lower', str(v))) for v in validate(lower)]
    if violations:
        return violations

    if not fiber:
        violations.append(Violation('fiber-member', ('empty fiber',)))
    for n in sorted(fiber):
        if n not in upper:
            violations.append(Violation('fiber-member', (n, 'unknown')))
        elif n not in upper.maximal_nodes():
            violations.append(Violation('fiber-member', (n, 'not maximal')))
        elif upper.height(n) == 0:
            violations.append(Violation('fiber-member', (n, 'height zero')))
    if m not in lower:
        violations.append(Violation('split-node', (m, 'unknown')))
    violations += _domain_violations(cert)
    if violations:
        return violations

    violations += phi.monotone_violations()
    violations += phi.coherence_violations()
    for v in lower.nodes:
        preimage = phi.preimage(v)
        if v == m and preimage != frozenset(fiber):
            violations.append(Violation('fiber-size', (v, *sorted(preimage))))
        elif v != m and len(preimage) != 1:
            violations.append(Violation('fiber-size', (v, *sorted(preimage))))
    for target in lower.classes:
        covered = card_sum(record.card for record, image in phi.class_map.items() if image == target)
        if covered != target.card:
            violations.append(Violation('class-cardinality', (str(target), str(covered), str(target.card))))
    if violations:
        return violations

    violations += _lifting_violations(cert)
    if upper.dim != lower.dim:
        violations.append(Violation('dimension-preservation', (str(upper.dim), str(lower.dim))))
    image_of_min = frozenset(phi(u) for u in upper.minimal_nodes())
    if image_of_min != lower.minimal_nodes():
        violations.append(Violation('min-preservation', tuple(sorted(image_of_min ^ lower.minimal_nodes()))))
    return violations


def _domain_violations(cert):
    upper, lower, phi = cert.upper, cert.lower, cert.map
    violations = []
    if set(phi.node_map) != set(upper.nodes):
        violations.append(Violation('map-domain', ('nodes', *sorted(set(upper.nodes) ^ set(phi.node_map)))))
    stray = sorted(v for v in phi.node_map.values() if v not in lower)
    if stray:
        violations.append(Violation('map-domain', ('targets', *stray)))
    unmapped = [str(record) for record in upper.classes if record not in phi.class_map]
    if unmapped:
        violations.append(Violation('map-domain', ('classes', *unmapped)))
    return violations


def _lifting_violations(cert):
    """phi(x') = x <= y must lift to some y' >= x' with phi(y') = y. Two class members are
    never comparable, so only the explicit targets and classes over explicit sources remain."""
    upper, lower, phi = cert.upper, cert.lower, cert.map
    violations = []
    for x_up in upper.nodes:
        x = phi(x_up)
        lifts = {phi(y) for y in upper.up_set(x_up) if not isinstance(y, ClassRecord)}
        for y in lower.up_set(x):
            if isinstance(y, ClassRecord):
                if not any(phi.class_map[record] == y for record in upper.classes_above(x_up)):
                    violations.append(Violation('lifting', (x_up, str(y))))
            elif y not in lifts:
                violations.append(Violation('lifting', (x_up, y)))
    for record in upper.classes:
        image = phi.class_map[record]
        lifts = {phi(y) for y in upper.up_set(record, strict=True)}
        for y in sorted(lower.up_set(image, strict=True)):
            if y not in lifts:
                violations.append(Violation('lifting', (str(record), y)))
    return violations


def check_d_preservation(cert):
    """Local d agrees on both sides at every explicit maximal node off the fiber."""
    violations = verify_splitting(cert)
    if violations:
        raise UnverifiedCertificateError(violations)
    upper, lower, phi = cert.upper, cert.lower, cert.map
    result = []
    for n in sorted(upper.maximal_nodes() - frozenset(cert.fiber)):
        if upper.height(n) == 0:
            continue
        image = phi(n)
        if image not in lower.maximal_nodes() or lower.height(image) == 0:
            result.append(Violation('d-preservation', (n, image, 'image is not a maximal node of positive height')))
            continue
        d_upper, d_lower = d_local(upper, n), d_local(lower, image)
        if d_upper != d_lower:
            result.append(Violation('d-preservation', (n, str(d_upper), str(d_lower))))
    return result
