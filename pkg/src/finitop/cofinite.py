"""The countable cofinite space, handled symbolically.

Points are the natural numbers; open sets are ∅ and the cofinite sets, closed
sets are the finite sets and the whole space. Every subset the API deals with
is finite or cofinite, so it is described by a finite list of numbers plus a
flag saying whether the list is the set itself or its complement.

This is the one model here that is not sober: the whole space is a prime
closed set that is not the closure of any point.
"""

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidInput


class Kind(Enum):
    FINITE = "finite"
    COFINITE = "cofinite"


@dataclass(frozen=True)
class SymbolicSet:
    """``FINITE(points)`` is the set itself, ``COFINITE(points)`` its complement."""

    kind: Kind
    points: tuple = ()

    def __post_init__(self):
        pts = self.points
        for p in pts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 0:
                raise InvalidInput(f"points of the cofinite space are naturals, got {p!r}")
        object.__setattr__(self, "points", tuple(sorted(set(pts))))

    @classmethod
    def finite(cls, points=()):
        return cls(Kind.FINITE, tuple(points))

    @classmethod
    def cofinite(cls, excluded=()):
        return cls(Kind.COFINITE, tuple(excluded))

    def __contains__(self, n):
        inside = n in self.points
        return inside if self.kind is Kind.FINITE else not inside

    @property
    def is_finite(self):
        return self.kind is Kind.FINITE

    @property
    def is_empty(self):
        return self.kind is Kind.FINITE and not self.points

    @property
    def is_whole(self):
        return self.kind is Kind.COFINITE and not self.points

    def is_closed(self):
        return self.is_finite or self.is_whole

    def is_open(self):
        return not self.is_finite or self.is_empty

    def complement(self):
        other = Kind.COFINITE if self.is_finite else Kind.FINITE
        return SymbolicSet(other, self.points)

    def union(self, other):
        a, b = set(self.points), set(other.points)
        if self.is_finite and other.is_finite:
            return SymbolicSet.finite(a | b)
        if self.is_finite:
            return SymbolicSet.cofinite(b - a)
        if other.is_finite:
            return SymbolicSet.cofinite(a - b)
        return SymbolicSet.cofinite(a & b)

    def intersection(self, other):
        return self.complement().union(other.complement()).complement()

    __or__ = union
    __and__ = intersection

    def issubset(self, other):
        return self.union(other) == other

    def truncate(self, bound):
        """The set intersected with ``{0, ..., bound}``."""
        if self.is_finite:
            return frozenset(p for p in self.points if p <= bound)
        excluded = set(self.points)
        return frozenset(p for p in range(bound + 1) if p not in excluded)

    def __str__(self):
        if self.is_whole:
            return "COFULL"
        body = ",".join(map(str, self.points))
        if self.is_finite:
            return "{" + body + "}"
        return "N\\{" + body + "}"


COFULL = SymbolicSet.cofinite(())
EMPTY = SymbolicSet.finite(())


class CofiniteSpace:
    """Handle for the cofinite topology on the natural numbers."""

    name = "cofinite"

    def __repr__(self):
        return "<CofiniteSpace>"

    def __eq__(self, other):
        return isinstance(other, CofiniteSpace)

    def __hash__(self):
        return hash("cofinite")


COFINITE = CofiniteSpace()


def cf_closure(s):
    """Finite sets are already closed; an infinite set is dense."""
    return s if s.is_finite else COFULL


def cf_prime_split(s):
    """Two closed sets, both different from ``s``, whose union is ``s``; or None.

    A finite set with at least two points splits off one point. A singleton
    has no proper nonempty closed subset. The whole space cannot split:
    its closed proper subsets are finite and two finite sets have finite union.
    """
    _check_closed_nonempty(s)
    if s.is_whole:
        return None
    if len(s.points) == 1:
        return None
    head, *rest = s.points
    return SymbolicSet.finite([head]), SymbolicSet.finite(rest)


def cf_is_prime(s):
    return cf_prime_split(s) is None


def cf_family_intersection(opens):
    """Intersection of a finite family of open sets."""
    out = COFULL
    for u in opens:
        if not u.is_open():
            raise InvalidInput(f"{u} is not open in the cofinite space")
        out = out & u
    return out


def cf_is_limit_set(s):
    """Every nonempty set is a limit set of the cofinite space.

    An open set meeting a nonempty set is nonempty, hence cofinite; a finite
    family of cofinite sets has cofinite, in particular nonempty,
    intersection. So no finite family of opens meeting ``s`` can fail.
    """
    if s.is_empty:
        raise InvalidInput("limit sets are nonempty")
    return True


def cf_max_limit_sets():
    """The whole space is a limit set and contains every other set."""
    return [COFULL]


def _check_closed_nonempty(s):
    if s.is_empty:
        raise InvalidInput("prime closed sets are nonempty")
    if not s.is_closed():
        raise InvalidInput(f"{s} is not closed in the cofinite space")


class CofiniteEnvelope:
    """Prime closed sets of the cofinite space: every singleton plus the whole space."""

    base = COFINITE

    def is_member(self, s):
        return s.is_closed() and not s.is_empty and cf_is_prime(s)

    def embed(self, n):
        return SymbolicSet.finite([n])

    def non_point_primes(self):
        return [COFULL]

    def describe(self):
        return ["singletons (schema)", "GENERIC: whole space"]

    def is_embedded(self, s):
        """Whether ``s`` is the closure of a point."""
        return s.is_finite and len(s.points) == 1


class CofiniteMap:
    """An eventually constant map from the cofinite space to a finite space.

    ``f(n) = table.get(n, default)``. Only these maps are represented; a map
    into a finite space that is continuous must be eventually constant anyway.
    """

    def __init__(self, target, table, default, name=None):
        self.target = target
        self.name = name
        self.default = default
        self.table = {int(k): v for k, v in dict(table).items()}
        for v in [default, *self.table.values()]:
            if v not in target.index:
                raise InvalidInput(f"map sends points outside the target: {v!r}")
        for k in self.table:
            if k < 0:
                raise InvalidInput("points of the cofinite space are naturals")

    def __call__(self, n):
        return self.table.get(n, self.default)

    def preimage(self, values):
        """Preimage of a set of target points, as a symbolic set."""
        values = set(values)
        if self.default in values:
            return SymbolicSet.cofinite([k for k, v in self.table.items() if v not in values])
        return SymbolicSet.finite([k for k, v in self.table.items() if v in values])

    def is_continuous(self):
        t = self.target
        for u in t.upsets():
            vals = [t.elements[i] for i in range(t.n) if u >> i & 1]
            if not self.preimage(vals).is_open():
                return False
        return True

    def is_constant(self):
        return all(v == self.default for v in self.table.values())


class CofiniteEnvelopeMap:
    """A map on the cofinite envelope: ``f`` on singletons, ``generic`` on the whole space."""

    def __init__(self, base_map, generic):
        self.base_map = base_map
        self.generic = generic
        self.target = base_map.target

    def __call__(self, prime):
        if prime.is_whole:
            return self.generic
        if prime.is_finite and len(prime.points) == 1:
            return self.base_map(prime.points[0])
        raise InvalidInput(f"{prime} is not a prime closed set")

    def is_continuous(self):
        """Open sets of the envelope are exactly the hit sets ``{S : S ∩ U ≠ ∅}``.

        For ``U = ∅`` that is ∅; for ``U`` cofinite it is the singletons inside
        ``U`` together with the whole space. A preimage is therefore open iff
        it is empty, or it contains the whole space and cofinitely many
        singletons.
        """
        t = self.target
        for u in t.upsets():
            vals = {t.elements[i] for i in range(t.n) if u >> i & 1}
            singles = self.base_map.preimage(vals)
            if self.generic in vals:
                if singles.is_finite:
                    return False
            elif not singles.is_empty:
                return False
        return True
