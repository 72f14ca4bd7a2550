"""Prime closed sets, the point-complete envelope and extension of maps.

The envelope of a space is the family of its prime closed sets with the
relative lower Vietoris topology. A continuous map into a T1 space is
constant on every prime closed set, which gives its extension to the
envelope: send a prime to the common value.
"""

from . import kernels
from .cofinite import (
    CofiniteEnvelope,
    CofiniteEnvelopeMap,
    CofiniteMap,
    CofiniteSpace,
)
from .errors import InvalidInput
from .hyperspace import ClosedSetFamily
from .poset import (
    FinitePoset,
    PointSet,
    SpaceMap,
    bits,
    is_closed,
    is_continuous,
    is_homeomorphism,
    pair_name,
    product,
)
from .topology import FiniteTopology


def _check_prime_candidate(f):
    if not f:
        raise InvalidInput("prime closed sets are nonempty")
    if not is_closed(f):
        raise InvalidInput(f"{f} is not closed")


def decomposition(f):
    """Closed sets ``(C1, C2)``, both different from ``f``, with ``C1 ∪ C2 = f``; or None.

    Exhaustive search over pairs of closed subsets of ``f``.
    """
    _check_prime_candidate(f)
    found = kernels.has_decomposition(f.mask, f.space.downsets())
    if found is None:
        return None
    return PointSet(f.space, found[0]), PointSet(f.space, found[1])


def is_prime(f, method="fast"):
    """Whether the nonempty closed set ``f`` is prime.

    ``method="fast"``: ``f`` has exactly one maximal point.
    ``method="brute"``: no pair of closed sets different from ``f`` unions to ``f``.
    """
    _check_prime_candidate(f)
    if method == "fast":
        space = f.space
        tops = [i for i in bits(f.mask) if not space.above[i] & f.mask & ~(1 << i)]
        return len(tops) == 1
    if method == "brute":
        return decomposition(f) is None
    raise ValueError(f"unknown method {method!r}")


class Envelope:
    """Prime closed sets of a finite space, ordered by inclusion."""

    def __init__(self, base, primes):
        self.base = base
        self.family = ClosedSetFamily(base, primes)
        self.primes = self.family.members
        self.poset = self.family.as_poset
        self.poset.name = f"{base.name}^c" if base.name else None
        point_of = {}
        for x in base.elements:
            closure = base.below[base.index[x]]
            if closure in self.family.position:
                point_of[x] = self.family.point(PointSet(base, closure))
        if len(point_of) != base.n:
            missing = [x for x in base.elements if x not in point_of]
            raise AssertionError(f"point closures not prime: {missing}")
        self.embedding = SpaceMap(base, self.poset, point_of)

    def __len__(self):
        return len(self.primes)

    def prime(self, name):
        return self.family.member(name)

    def non_point_primes(self):
        embedded = {self.base.below[i] for i in range(self.base.n)}
        return [PointSet(self.base, m) for m in self.primes if m not in embedded]

    def is_bijective(self):
        return len(set(self.embedding.images)) == self.base.n == len(self.primes)

    def describe(self):
        """One line per prime: the set and the point whose closure it is."""
        lines = []
        for m in self.primes:
            s = PointSet(self.base, m)
            tops = [
                self.base.elements[i] for i in bits(m)
                if not self.base.above[i] & m & ~(1 << i)
            ]
            if len(tops) == 1 and self.base.below[self.base.index[tops[0]]] == m:
                lines.append(f"{s.display()}  point {tops[0]}")
            else:
                lines.append(f"{s.display()}  GENERIC")
        return lines

    def relative_topology(self):
        """Relative lower Vietoris topology, generated by traces of hit sets."""
        return self.family.lower_vietoris()


def sobrify(x, prime_test="fast"):
    """The point-complete envelope of ``x``.

    For a :class:`FinitePoset` every closed set is tested for primality and the
    embedding is checked to be bijective (finite T0 spaces are sober). For the
    cofinite space the symbolic envelope is returned.
    """
    if isinstance(x, CofiniteSpace):
        return CofiniteEnvelope()
    if not isinstance(x, FinitePoset):
        raise InvalidInput(f"cannot build the envelope of {x!r}")
    primes = [
        m for m in x.downsets()
        if m and is_prime(PointSet(x, m), method=prime_test)
    ]
    env = Envelope(x, primes)
    if not env.is_bijective():
        raise AssertionError(f"finite space {x.name} is not sober")
    return env


def is_t1(space):
    """A finite space is T1 exactly when its order is trivial."""
    return all(b == 1 << i for i, b in enumerate(space.below))


def extend_to_envelope(f):
    """The unique continuous extension of ``f`` to the envelope of its source.

    ``f`` must be continuous with a T1 (for a finite target: discrete) target.
    Accepts a :class:`SpaceMap` from a finite space or a :class:`CofiniteMap`.
    """
    if not is_t1(f.target):
        raise InvalidInput("target space is not T1")
    if isinstance(f, CofiniteMap):
        if not f.is_continuous():
            raise InvalidInput("map is not continuous")
        # The whole space is the only non-point prime; f must be constant on it.
        if not f.is_constant():
            raise AssertionError("continuous map into a T1 space is not constant on a prime")
        ext = CofiniteEnvelopeMap(f, f.default)
        if not ext.is_continuous():
            raise AssertionError("extension is not continuous")
        return ext
    if not is_continuous(f):
        raise InvalidInput("map is not continuous")
    env = sobrify(f.source)
    assignment = {}
    for m in env.primes:
        values = {f.images[i] for i in bits(m)}
        if len(values) != 1:
            s = PointSet(f.source, m)
            raise AssertionError(f"map takes {len(values)} values on the prime {s}")
        assignment[env.family.point(PointSet(f.source, m))] = f.target.elements[values.pop()]
    ext = SpaceMap(env.poset, f.target, assignment)
    if not is_continuous(ext):
        raise AssertionError("extension is not continuous")
    if ext.compose(env.embedding) != f:
        raise AssertionError("extension does not restrict to the original map")
    return ext


def rectangle_closure(p, s1, s2):
    """``closure(s1 × s2)`` inside the product space ``p``."""
    mask = 0
    for a in s1:
        for b in s2:
            mask |= 1 << p.pair_index[(a, b)]
    return PointSet(p, kernels.down_closure(mask, p.below))


def product_envelope_map(x1, x2):
    """The canonical map ``(S1, S2) -> closure(S1 × S2)`` between envelopes.

    Returns ``(nu, e1, e2, ep)`` where ``nu`` is a :class:`SpaceMap` from
    ``product(e1.poset, e2.poset)`` into ``ep.poset``, or ``nu = None`` when some
    value is not a prime of the product.
    """
    e1, e2 = sobrify(x1), sobrify(x2)
    p = product(x1, x2)
    ep = sobrify(p)
    dom = product(e1.poset, e2.poset)
    assignment = {}
    for n1 in e1.poset.elements:
        s1 = e1.prime(n1)
        for n2 in e2.poset.elements:
            s2 = e2.prime(n2)
            c = rectangle_closure(p, s1, s2)
            if c.mask not in ep.family.position:
                return None, e1, e2, ep
            assignment[pair_name(n1, n2)] = ep.family.point(c)
    return SpaceMap(dom, ep.poset, assignment), e1, e2, ep


def product_envelope_check(x1, x2):
    """Whether the canonical map between envelopes is a homeomorphism fixing points."""
    nu, e1, e2, ep = product_envelope_map(x1, x2)
    if nu is None or not is_homeomorphism(nu):
        return False
    for a in x1.elements:
        for b in x2.elements:
            src = pair_name(e1.embedding(a), e2.embedding(b))
            if nu(src) != ep.embedding(pair_name(a, b)):
                return False
    return True


def relative_topology_matches_order(env):
    """Relative lower Vietoris topology on the primes equals the inclusion-order topology."""
    return env.relative_topology() == FiniteTopology.alexandrov(env.poset)
