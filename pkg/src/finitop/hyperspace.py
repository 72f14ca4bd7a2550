"""The hyperspace of closed sets with the lower Vietoris topology.

For a finite space the closed sets are its down-sets. The lower Vietoris
topology is generated by the hit sets ``{F : F ∩ U ≠ ∅}`` for ``U`` open; on a
finite base it coincides with the Alexandrov topology of inclusion, so the
hyperspace is stored as a :class:`FinitePoset` ordered by ``⊆``.
"""

from functools import cached_property

from .errors import InvalidInput
from .poset import FinitePoset, PointSet, SpaceMap, bits, is_open
from .topology import FiniteTopology


def set_name(space, mask):
    return PointSet(space, mask).display()


class ClosedSetFamily:
    """All closed subsets of ``base``.

    ``members`` holds the closed sets as masks, ordered by cardinality and then
    lexicographically. ``as_poset`` is the same family as a poset under
    inclusion, its points named like ``{p,m}``.
    """

    def __init__(self, base, members=None):
        self.base = base
        self.members = tuple(base.downsets() if members is None else members)
        self.names = tuple(set_name(base, m) for m in self.members)
        pairs = []
        for a, ma in enumerate(self.members):
            for b, mb in enumerate(self.members):
                if a != b and not ma & ~mb:
                    pairs.append((self.names[a], self.names[b]))
        self.as_poset = FinitePoset(self.names, pairs, name=_hyper_name(base))
        self.position = {m: self.as_poset.index[nm] for m, nm in zip(self.members, self.names)}

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return (PointSet(self.base, m) for m in self.members)

    def __contains__(self, s):
        return isinstance(s, PointSet) and s.mask in self.position

    def point(self, s):
        """Name of closed set ``s`` as a point of :attr:`as_poset`."""
        try:
            return self.as_poset.elements[self.position[s.mask]]
        except KeyError:
            raise InvalidInput(f"{s} is not a member of the hyperspace") from None

    def member(self, name):
        """The closed set behind point ``name`` of :attr:`as_poset`."""
        i = self.as_poset._idx(name)
        for m, pos in self.position.items():
            if pos == i:
                return PointSet(self.base, m)
        raise AssertionError("position table out of sync")

    def members_of(self, s):
        """The closed sets picked out by a point set of :attr:`as_poset`."""
        by_pos = {pos: m for m, pos in self.position.items()}
        return [PointSet(self.base, by_pos[i]) for i in bits(s.mask)]

    def subfamily(self, masks):
        mask = 0
        for m in masks:
            try:
                mask |= 1 << self.position[m]
            except KeyError:
                raise InvalidInput("not a closed set of the base") from None
        return PointSet(self.as_poset, mask)

    @cached_property
    def hit_generators(self):
        """Hit set of every open set of the base, as masks over :attr:`as_poset`."""
        out = []
        for u in self.base.upsets():
            m = 0
            for f, pos in self.position.items():
                if f & u:
                    m |= 1 << pos
            out.append(m)
        return tuple(out)

    def lower_vietoris(self):
        """The topology generated by all hit sets, as an explicit open family."""
        return FiniteTopology.generated_by(self.as_poset.n, self.hit_generators)


def _hyper_name(base):
    return f"F({base.name})" if base.name else None


def build_hyperspace(x):
    """Enumerate all closed sets of ``x``. Raises ``CapacityError`` past the size guard."""
    return ClosedSetFamily(x)


def hit_set(h, u):
    """Members of ``h`` meeting the open set ``u``, as a point set of ``h.as_poset``."""
    if u.space != h.base:
        raise InvalidInput("open set belongs to a different space")
    if not is_open(u):
        raise InvalidInput(f"{u} is not open")
    mask = 0
    for f, pos in h.position.items():
        if f & u.mask:
            mask |= 1 << pos
    return PointSet(h.as_poset, mask)


def embed_point(h, x):
    """The closure of ``{x}``, a member of ``h``."""
    if x not in h.base.index:
        raise InvalidInput(f"unknown point {x!r}")
    return PointSet(h.base, h.base.below[h.base.index[x]])


def embedding_map(h):
    """``x -> closure{x}`` as a map from the base into ``h.as_poset``."""
    return SpaceMap(
        h.base, h.as_poset,
        {x: h.point(embed_point(h, x)) for x in h.base.elements},
    )
