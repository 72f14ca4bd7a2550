"""Finite T0 spaces in Alexandrov form.

A finite T0 space is the same thing as a finite poset: ``x <= y`` iff ``x``
lies in the closure of ``{y}``. Closed sets are the down-sets, open sets the
up-sets. Points are kept in lexicographic order by name and every subset is
stored as a bitmask over that order.
"""

from dataclasses import dataclass
from functools import cached_property

from . import kernels
from .capacity import max_size
from .errors import CapacityError, InvalidInput


def popcount(mask):
    return bin(mask).count("1")


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_key(mask):
    """Canonical ordering of subsets: by cardinality, then lexicographic."""
    return (popcount(mask), bits(mask))


class FinitePoset:
    """A finite partially ordered set, read as a T0 space.

    ``order`` lists pairs ``(x, y)`` meaning ``x <= y``; reflexive pairs may be
    omitted. The relation must already be transitive and antisymmetric; use
    :meth:`from_relations` to close a generating relation first.
    """

    def __init__(self, elements, order=(), name=None):
        names = list(elements)
        for x in names:
            if not isinstance(x, str) or not x:
                raise InvalidInput(f"point names must be nonempty strings, got {x!r}")
        if len(set(names)) != len(names):
            dupes = sorted({x for x in names if names.count(x) > 1})
            raise InvalidInput(f"duplicate point names: {', '.join(dupes)}")
        self.name = name
        self.elements = tuple(sorted(names))
        self.index = {x: i for i, x in enumerate(self.elements)}
        below = [1 << i for i in range(len(self.elements))]
        for pair in order:
            a, b = pair
            if a not in self.index or b not in self.index:
                missing = a if a not in self.index else b
                raise InvalidInput(f"order mentions unknown point {missing!r}")
            below[self.index[b]] |= 1 << self.index[a]
        for i, b in enumerate(below):
            if kernels.down_closure(b, below) != b:
                j = next(
                    j for j in bits(b)
                    if below[j] & ~b
                )
                k = bits(below[j] & ~b)[0]
                raise InvalidInput(
                    "order is not transitive: "
                    f"{self.elements[k]}<={self.elements[j]}<={self.elements[i]} "
                    f"but not {self.elements[k]}<={self.elements[i]}"
                )
        for i, b in enumerate(below):
            for j in bits(b):
                if j != i and below[j] >> i & 1:
                    raise InvalidInput(
                        "order is not antisymmetric: "
                        f"{self.elements[j]}<={self.elements[i]} and "
                        f"{self.elements[i]}<={self.elements[j]}"
                    )
        self.below = tuple(below)
        above = [0] * len(below)
        for i, b in enumerate(below):
            for j in bits(b):
                above[j] |= 1 << i
        self.above = tuple(above)

    @classmethod
    def from_relations(cls, elements, pairs, name=None):
        """Build the poset generated by ``pairs`` (reflexive-transitive closure)."""
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        up = {x: set() for x in elements}
        for a, b in pairs:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise InvalidInput(f"order mentions unknown point {missing!r}")
            up[a].add(b)
        closed = []
        for a in elements:
            seen = set()
            stack = list(up[a])
            while stack:
                b = stack.pop()
                if b in seen:
                    continue
                seen.add(b)
                stack.extend(up[b])
            closed.extend((a, b) for b in seen if b != a)
            if a in seen:
                raise InvalidInput(f"order is not antisymmetric: cycle through {a}")
        return cls(elements, closed, name=name)

    @classmethod
    def discrete(cls, names, name=None):
        return cls(names, (), name=name)

    @classmethod
    def chain(cls, names, name=None):
        names = list(names)
        pairs = [(names[i], names[j]) for i in range(len(names)) for j in range(i + 1, len(names))]
        return cls(names, pairs, name=name)

    @classmethod
    def point(cls, label="*", name="point"):
        return cls([label], (), name=name)

    # basic structure

    @property
    def n(self):
        return len(self.elements)

    @property
    def full(self):
        return (1 << self.n) - 1

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and self.below == other.below

    def __hash__(self):
        return hash((self.elements, self.below))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        rel = " ".join(f"{a}<{b}" for a, b in self.covers())
        return f"<FinitePoset{label} [{' '.join(self.elements)}] {rel}>"

    def leq(self, x, y):
        return bool(self.below[self._idx(y)] >> self._idx(x) & 1)

    def _idx(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise InvalidInput(f"unknown point {x!r}") from None

    def order_pairs(self):
        """Strict order pairs ``(x, y)`` with ``x < y``, canonically sorted."""
        return sorted(
            (self.elements[j], self.elements[i])
            for i, b in enumerate(self.below)
            for j in bits(b)
            if j != i
        )

    def covers(self):
        """Hasse-diagram edges ``(x, y)``: ``x < y`` with nothing in between."""
        out = []
        for i, b in enumerate(self.below):
            strict = b & ~(1 << i)
            for j in bits(strict):
                between = strict & self.above[j] & ~(1 << j)
                if not between:
                    out.append((self.elements[j], self.elements[i]))
        return sorted(out)

    @cached_property
    def linear_extension(self):
        return tuple(sorted(range(self.n), key=lambda i: (popcount(self.below[i]), i)))

    @cached_property
    def depth(self):
        """Length of the longest chain strictly below each point."""
        d = [0] * self.n
        for i in self.linear_extension:
            strict = self.below[i] & ~(1 << i)
            d[i] = max((d[j] + 1 for j in bits(strict)), default=0)
        return tuple(d)

    @cached_property
    def display_order(self):
        """Points sorted by depth, then name; used when printing sets."""
        return tuple(sorted(range(self.n), key=lambda i: (self.depth[i], self.elements[i])))

    def minimal(self):
        return [x for i, x in enumerate(self.elements) if self.below[i] == 1 << i]

    def maximal(self):
        return [x for i, x in enumerate(self.elements) if self.above[i] == 1 << i]

    def is_t0(self):
        """Distinct points have distinct closures (always true for a poset)."""
        closures = [self.below[i] for i in range(self.n)]
        return len(set(closures)) == self.n

    # subsets

    def subset(self, names):
        mask = 0
        for x in names:
            if x not in self.index:
                raise InvalidInput(f"{x!r} is not a point of {self.name or 'the space'}")
            mask |= 1 << self.index[x]
        return PointSet(self, mask)

    def pointset(self, mask):
        if mask < 0 or mask & ~self.full:
            raise InvalidInput("mask has bits outside the space")
        return PointSet(self, mask)

    def whole(self):
        return PointSet(self, self.full)

    def empty(self):
        return PointSet(self, 0)

    def down(self, x):
        return PointSet(self, self.below[self._idx(x)])

    def up(self, x):
        return PointSet(self, self.above[self._idx(x)])

    def downsets(self):
        """All closed sets as masks, canonically ordered. Size-guarded."""
        cached = self.__dict__.get("_downsets")
        limit = max_size()
        if cached is not None:
            if len(cached) > limit:
                raise CapacityError(f"{len(cached)} closed sets exceed the limit {limit}")
            return cached
        found = kernels.enumerate_downsets(list(self.linear_extension), list(self.below), limit)
        if found is None:
            raise CapacityError(
                f"{self.name or 'space'} has more than {limit} closed sets"
            )
        out = tuple(sorted(found, key=mask_key))
        self.__dict__["_downsets"] = out
        return out

    def upsets(self):
        """All open sets as masks, canonically ordered. Size-guarded."""
        cached = self.__dict__.get("_upsets")
        if cached is not None:
            return cached
        full = self.full
        out = tuple(sorted((full & ~d for d in self.downsets()), key=mask_key))
        self.__dict__["_upsets"] = out
        return out

    def is_downset(self, mask):
        return kernels.down_closure(mask, self.below) == mask

    def is_upset(self, mask):
        return kernels.down_closure(mask, self.above) == mask


@dataclass(frozen=True)
class PointSet:
    """A subset of the points of a :class:`FinitePoset`."""

    space: FinitePoset
    mask: int

    @property
    def members(self):
        return tuple(self.space.elements[i] for i in bits(self.mask))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return popcount(self.mask)

    def __bool__(self):
        return self.mask != 0

    def __contains__(self, x):
        i = self.space.index.get(x)
        return i is not None and bool(self.mask >> i & 1)

    def _check(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        if other.space is not self.space and other.space != self.space:
            raise InvalidInput("point sets live in different spaces")
        return other

    def __or__(self, other):
        self._check(other)
        return PointSet(self.space, self.mask | other.mask)

    def __and__(self, other):
        self._check(other)
        return PointSet(self.space, self.mask & other.mask)

    def __sub__(self, other):
        self._check(other)
        return PointSet(self.space, self.mask & ~other.mask)

    def __le__(self, other):
        self._check(other)
        return not self.mask & ~other.mask

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def sort_key(self):
        return mask_key(self.mask)

    def display(self):
        order = [i for i in self.space.display_order if self.mask >> i & 1]
        return "{" + ",".join(self.space.elements[i] for i in order) + "}"

    def __str__(self):
        return self.display()

    def __repr__(self):
        return f"PointSet({self.display()})"


class SpaceMap:
    """A total function between the point sets of two finite spaces."""

    def __init__(self, source, target, assignment, name=None):
        self.source = source
        self.target = target
        self.name = name
        assignment = dict(assignment)
        missing = [x for x in source.elements if x not in assignment]
        if missing:
            raise InvalidInput(f"map is not total: no value for {', '.join(missing)}")
        extra = [x for x in assignment if x not in source.index]
        if extra:
            raise InvalidInput(f"map assigns unknown source points {', '.join(map(str, extra))}")
        bad = [v for v in assignment.values() if v not in target.index]
        if bad:
            raise InvalidInput(f"map sends points outside the target: {', '.join(map(str, bad))}")
        self.images = tuple(target.index[assignment[x]] for x in source.elements)

    @classmethod
    def from_images(cls, source, target, images, name=None):
        return cls(
            source, target,
            {x: target.elements[t] for x, t in zip(source.elements, images)},
            name=name,
        )

    @classmethod
    def identity(cls, space):
        return cls(space, space, {x: x for x in space.elements})

    @property
    def assignment(self):
        return {x: self.target.elements[t] for x, t in zip(self.source.elements, self.images)}

    def __call__(self, x):
        return self.target.elements[self.images[self.source._idx(x)]]

    def __eq__(self, other):
        if not isinstance(other, SpaceMap):
            return NotImplemented
        return (self.source, self.target, self.images) == (other.source, other.target, other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        body = " ".join(f"{a}->{b}" for a, b in self.assignment.items())
        return f"<SpaceMap {self.name or ''} {body}>"

    def compose(self, inner):
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise InvalidInput("maps do not compose")
        return SpaceMap.from_images(
            inner.source, self.target, [self.images[t] for t in inner.images]
        )

    def image_of(self, s):
        return PointSet(self.target, kernels.image(s.mask, self.images))

    def preimage_of(self, s):
        return PointSet(self.source, kernels.preimage(s.mask, self.images))

    def is_injective(self):
        return len(set(self.images)) == len(self.images)


def closure(s):
    """Smallest closed set (down-set) containing ``s``."""
    return PointSet(s.space, kernels.down_closure(s.mask, s.space.below))


def open_hull(s):
    """Smallest open set (up-set) containing ``s``."""
    return PointSet(s.space, kernels.down_closure(s.mask, s.space.above))


def is_closed(s):
    return s.space.is_downset(s.mask)


def is_open(s):
    return s.space.is_upset(s.mask)


def is_continuous(f, method="order"):
    """Whether ``f`` pulls open sets back to open sets.

    ``method="order"`` checks monotonicity of the specialization order;
    ``method="preimage"`` tests the preimage of every up-set of the target.
    """
    if method == "order":
        return kernels.is_monotone(list(f.source.below), list(f.images), list(f.target.below))
    if method == "preimage":
        for v in f.target.upsets():
            if not f.source.is_upset(kernels.preimage(v, f.images)):
                return False
        return True
    raise ValueError(f"unknown method {method!r}")


def pair_name(a, b):
    return f"({a},{b})"


def product(x1, x2, name=None):
    """Product space; points are named ``(a,b)`` and ordered componentwise."""
    elements = [pair_name(a, b) for a in x1.elements for b in x2.elements]
    pairs = []
    for a in x1.elements:
        for b in x2.elements:
            for c in x1.elements:
                if not x1.leq(a, c):
                    continue
                for d in x2.elements:
                    if x2.leq(b, d) and (a, b) != (c, d):
                        pairs.append((pair_name(a, b), pair_name(c, d)))
    if name is None and x1.name and x2.name:
        name = f"{x1.name}x{x2.name}"
    return ProductPoset(elements, pairs, name=name, factors=(x1, x2))


class ProductPoset(FinitePoset):
    """A product space that remembers its two factors."""

    def __init__(self, elements, order=(), name=None, factors=None):
        super().__init__(elements, order, name=name)
        self.factors = factors
        x1, x2 = factors
        self.pair_index = {
            (a, b): self.index[pair_name(a, b)] for a in x1.elements for b in x2.elements
        }

    def pair_of(self, i):
        """Coordinates ``(a, b)`` of the point with index ``i``."""
        return self._coords[i]

    @cached_property
    def _coords(self):
        return {i: ab for ab, i in self.pair_index.items()}


def projections(p):
    """The two coordinate projections of a space built by :func:`product`."""
    x1, x2 = p.factors
    first = {pair_name(a, b): a for a in x1.elements for b in x2.elements}
    second = {pair_name(a, b): b for a in x1.elements for b in x2.elements}
    return SpaceMap(p, x1, first), SpaceMap(p, x2, second)


def rectangle(p, s1, s2):
    """The subset ``s1 × s2`` of the product space ``p``."""
    mask = 0
    for a in s1:
        for b in s2:
            mask |= 1 << p.pair_index[(a, b)]
    return PointSet(p, mask)


def is_dense(z):
    """Every nonempty open set meets ``z``; equivalently ``closure(z)`` is everything."""
    return kernels.down_closure(z.mask, z.space.below) == z.space.full


def is_dense_by_opens(z):
    """Literal density test over every nonempty up-set."""
    return all(u & z.mask for u in z.space.upsets() if u)


def subspace(s, name=None):
    """The subspace on ``s``; for finite spaces its order is the restricted order."""
    space = s.space
    idx = bits(s.mask)
    members = [space.elements[i] for i in idx]
    pairs = [
        (space.elements[i], space.elements[j])
        for i in idx for j in idx
        if i != j and space.below[j] >> i & 1
    ]
    return FinitePoset(members, pairs, name=name)


def is_order_embedding(f):
    n = f.source.n
    for i in range(n):
        for j in range(n):
            if f.target.below[f.images[j]] >> f.images[i] & 1 and not f.source.below[j] >> i & 1:
                return False
    return True


def is_homeomorphism_onto_image(f, method="base"):
    """Injective, continuous, and open onto its image in the subspace topology.

    ``method="all"`` tests the image of every open set. ``"base"`` tests only
    the minimal neighbourhoods ``↑x``: every open set is a union of them, and
    images and traces both commute with unions.
    """
    if not is_continuous(f):
        raise InvalidInput("map is not continuous")
    if not f.is_injective():
        return False
    img = kernels.image(f.source.full, f.images)
    if method == "base":
        opens = f.source.above
    elif method == "all":
        opens = f.source.upsets()
    else:
        raise ValueError(f"unknown method {method!r}")
    for u in opens:
        fu = kernels.image(u, f.images)
        trace = kernels.down_closure(fu, f.target.above) & img
        if trace != fu:
            return False
    return True


def is_homeomorphism(f):
    return (
        is_continuous(f)
        and is_homeomorphism_onto_image(f)
        and kernels.image(f.source.full, f.images) == f.target.full
    )
