import logging
from collections import namedtuple

from util.kposet import d_local, e_count, require_proper, splittable_nodes
from util.poset import PosetMap
from util.splitting.certificate import SplittingCertificate, SplittingError, trivial_certificate
from util.splitting.expand import expand
from util.splitting.split import refine_certificate, split_at

logger = logging.getLogger(__name__)


class Stage(namedtuple('Stage', 'poset certificate')):
    """One poset of a simplifying chain with the certificate splitting it onto the next older
    stage; the input poset carries None."""
    __slots__ = ()


class SimplifyingChain(namedtuple('SimplifyingChain', 'stages')):
    """Stages ordered from the simplification back to the input poset."""
    __slots__ = ()

    @property
    def simplification(self):
        return self.stages[0].poset

    @property
    def original(self):
        return self.stages[-1].poset

    @property
    def length(self):
        return len(self.stages) - 1

    @property
    def e_sequence(self):
        """e of every stage, starting from the input poset."""
        return [e_count(stage.poset) for stage in reversed(self.stages)]

    def certificates(self):
        """Certificates in the order they were produced."""
        return [stage.certificate for stage in reversed(self.stages) if stage.certificate is not None]


def _local_shares(poset, n, local):
    """How the classes of the split lower set L(n) spread over the classes of `poset`.

    The class carrying the split rule for low w sits under every fiber node above w and
    stands for every class of `poset` with low w that n belongs to. The classes refinement
    created stand for the class ({n}, w) alone."""
    upper = local.upper
    shares = {}
    class_map = {}
    for record in upper.classes:
        w = record.low
        fiber_above = frozenset(m for m in local.fiber if upper.le(w, m))
        if record.ups == fiber_above:
            targets = tuple((other, other.card) for other in poset.classes
                            if other.low == w and n in other.ups)
        else:
            single = poset.class_of({n}, w)
            if single is None:
                raise SplittingError(f'`{n}` has no class over `{w}` to refine into')
            targets = ((single, record.card),)
        shares[record] = targets
        class_map[record] = targets[0][0]
    return class_map, shares


def local_split(poset, n):
    """Split the lower set L(n) and return its certificate together with the map from the
    split lower set into `poset` (None when the split is trivial)."""
    local = split_at(poset.lower_set(n), n, avoid=poset.nodes)
    if local.is_trivial:
        return local, None
    class_map, shares = _local_shares(poset, n, local)
    return local, PosetMap(local.upper, poset, dict(local.map.node_map), class_map, shares)


def split_maximal(poset, n):
    """Split the maximal node `n` of `poset`: split its lower set, extend the splitting to the
    whole poset and refine the result."""
    local_d = d_local(poset, n)
    local, f = local_split(poset, n)
    if f is None:
        return trivial_certificate(poset, n)
    expansion = expand(f)
    cert = SplittingCertificate(expansion.poset, poset, n, local.fiber, expansion.map)
    logger.info(f'Split maximal node `{n}` (d = {local_d}) into {sorted(local.fiber)}')
    return refine_certificate(cert)


def simplify(poset):
    """A simplifying chain of the proper K-poset `poset`; each step splits the smallest
    maximal node whose local d exceeds one."""
    require_proper(poset)
    history = [Stage(poset, None)]
    current = poset
    e = e_count(current)
    while e > 0:
        n = splittable_nodes(current)[0]
        cert = split_maximal(current, n)
        next_e = e_count(cert.upper)
        if next_e >= e:
            raise SplittingError(f'Splitting `{n}` did not lower e ({e} -> {next_e})')
        logger.info(f'Simplify stage {len(history)}: split `{n}`, e {e} -> {next_e}')
        history.append(Stage(cert.upper, cert))
        current, e = cert.upper, next_e
    return SimplifyingChain(tuple(reversed(history)))
