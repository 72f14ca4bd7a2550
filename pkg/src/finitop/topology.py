"""Explicit finite topologies given by their families of open sets.

Used where a topology is *generated* (from hit sets, open rectangles, or
traces on a subspace) and has to be compared with the Alexandrov topology
of some order.
"""

from . import kernels
from .capacity import max_size
from .errors import CapacityError
from .poset import bits, mask_key


def minimal_neighbourhoods(n, subbasis):
    """Smallest open set around each point in the topology generated by ``subbasis``.

    In a finite space the finite intersections of subbasic sets form a basis,
    so the smallest open set around ``p`` is the intersection of every subbasic
    set containing ``p`` (the whole space if there is none).
    """
    full = (1 << n) - 1
    nb = [full] * n
    for s in subbasis:
        for p in bits(s):
            nb[p] &= s
    return nb


class FiniteTopology:
    """A topology on points ``0..n-1``; ``opens`` is a frozenset of masks."""

    def __init__(self, n, opens):
        self.n = n
        self.opens = frozenset(opens)

    @classmethod
    def generated_by(cls, n, subbasis):
        nb = minimal_neighbourhoods(n, subbasis)
        return cls(n, unions_of_neighbourhoods(n, nb))

    @classmethod
    def alexandrov(cls, poset):
        return cls(poset.n, poset.upsets())

    def __eq__(self, other):
        if not isinstance(other, FiniteTopology):
            return NotImplemented
        return self.n == other.n and self.opens == other.opens

    def __hash__(self):
        return hash((self.n, self.opens))

    def __len__(self):
        return len(self.opens)

    def is_topology(self):
        full = (1 << self.n) - 1
        if 0 not in self.opens or full not in self.opens:
            return False
        ops = list(self.opens)
        return all(a | b in self.opens and a & b in self.opens for a in ops for b in ops)

    def is_open(self, mask):
        return mask in self.opens

    def neighbourhoods(self):
        """Smallest open set around each point."""
        full = (1 << self.n) - 1
        nb = [full] * self.n
        for u in self.opens:
            for p in bits(u):
                nb[p] &= u
        return nb

    def sorted_opens(self):
        return sorted(self.opens, key=mask_key)


def unions_of_neighbourhoods(n, nb):
    """Every union of the sets ``nb[p]``, i.e. every set ``S`` with ``p in S => nb[p] <= S``."""
    limit = max_size()
    # q in nb[p] plays the role of "q below p" for the down-set enumerator.
    order = _linear_order(n, nb)
    if order is not None:
        found = kernels.enumerate_downsets(order, nb, limit)
        if found is None:
            raise CapacityError(f"more than {limit} open sets")
        return found
    found = {0}
    frontier = [0]
    while frontier:
        cur = frontier.pop()
        for p in range(n):
            nxt = cur | nb[p]
            if nxt not in found:
                found.add(nxt)
                if len(found) > limit:
                    raise CapacityError(f"more than {limit} open sets")
                frontier.append(nxt)
    return list(found)


def _linear_order(n, nb):
    """An order of the points with every ``q in nb[p]`` before ``p``, if acyclic."""
    strict = [nb[p] & ~(1 << p) for p in range(n)]
    done = 0
    order = []
    remaining = set(range(n))
    while remaining:
        ready = [p for p in sorted(remaining) if not strict[p] & ~done]
        if not ready:
            return None
        for p in ready:
            order.append(p)
            done |= 1 << p
            remaining.discard(p)
    return order


def subspace_topology(top, mask):
    """The trace topology on the points of ``mask``, re-indexed ``0..k-1``."""
    idx = bits(mask)
    out = set()
    for u in top.opens:
        m = 0
        for new, old in enumerate(idx):
            if u >> old & 1:
                m |= 1 << new
        out.add(m)
    return FiniteTopology(len(idx), out)


def product_topology(t1, t2):
    """Topology on ``t1.n * t2.n`` points (index ``a * t2.n + b``) generated by open rectangles."""
    n2 = t2.n
    rects = []
    for u in t1.opens:
        for v in t2.opens:
            m = 0
            for a in bits(u):
                for b in bits(v):
                    m |= 1 << (a * n2 + b)
            rects.append(m)
    return FiniteTopology.generated_by(t1.n * n2, rects)


def is_continuous_map(images, source, target):
    """Preimage of every open of ``target`` is open in ``source``."""
    return all(kernels.preimage(v, images) in source.opens for v in target.opens)


def is_open_map(images, source, target):
    return all(kernels.image(u, images) in target.opens for u in source.opens)
