"""Small posets: enumeration up to isomorphism, random generation, named examples."""

import itertools
import string
from functools import lru_cache

from .poset import FinitePoset

LETTERS = string.ascii_lowercase


def _code(n, rel, perm):
    """Bit code of the strict relation ``rel`` after relabelling by ``perm``."""
    code = 0
    for i, j in rel:
        code |= 1 << (perm[i] * n + perm[j])
    return code


@lru_cache(maxsize=None)
def _reps(n):
    """Canonical strict relations on ``0..n-1``, one per isomorphism class.

    Every finite poset has a natural labelling (``i < j`` implies ``i`` comes
    first), so it suffices to scan transitive subsets of the pairs ``i < j``.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    perms = list(itertools.permutations(range(n)))
    seen = {}
    for choice in range(1 << len(pairs)):
        rel = [pairs[k] for k in range(len(pairs)) if choice >> k & 1]
        rs = set(rel)
        if any((i, l) not in rs for i, j in rel for k, l in rel if j == k):
            continue
        best = min(_code(n, rel, p) for p in perms)
        seen.setdefault(best, rel)
    return tuple(sorted(seen.items()))


def posets_up_to_iso(n, prefix="P"):
    """One poset on points ``a, b, ...`` for each isomorphism class of size ``n``."""
    out = []
    names = LETTERS[:n]
    for k, (_, rel) in enumerate(_reps(n)):
        out.append(
            FinitePoset(names, [(names[i], names[j]) for i, j in rel], name=f"{prefix}{n}_{k}")
        )
    return out


def all_posets(max_n, min_n=1):
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(posets_up_to_iso(n))
    return out


def random_poset(rng, n, density=None, name=None):
    """Transitive closure of a random relation compatible with ``0 < 1 < ... < n-1``."""
    if density is None:
        density = rng.uniform(0.15, 0.6)
    names = LETTERS[:n]
    gens = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    perm = list(names)
    rng.shuffle(perm)
    relabel = dict(zip(names, perm))
    gens = [(relabel[a], relabel[b]) for a, b in gens]
    return FinitePoset.from_relations(names, gens, name=name)


def canonical_code(p):
    """Isomorphism invariant that separates isomorphism classes (brute force)."""
    n = p.n
    rel = [(p.index[a], p.index[b]) for a, b in p.order_pairs()]
    return n, min(_code(n, rel, perm) for perm in itertools.permutations(range(n)))


def isomorphisms(p, q):
    """Every order isomorphism ``p -> q`` as a dict of point names."""
    if p.n != q.n or len(p.order_pairs()) != len(q.order_pairs()):
        return
    for perm in itertools.permutations(range(q.n)):
        ok = True
        for i in range(p.n):
            for j in range(p.n):
                if bool(p.below[j] >> i & 1) != bool(q.below[perm[j]] >> perm[i] & 1):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield {p.elements[i]: q.elements[perm[i]] for i in range(p.n)}


def automorphisms(p):
    return list(isomorphisms(p, p))


def is_isomorphic(p, q):
    return next(isomorphisms(p, q), None) is not None


def named_spaces():
    """The small spaces used throughout the documentation and tests."""
    return {
        "point": FinitePoset.point(),
        "sierpinski": FinitePoset.chain(["0", "1"], name="sierpinski"),
        "chain2": FinitePoset.chain(["0", "1"], name="chain2"),
        "chain3": FinitePoset.chain(["0", "1", "2"], name="chain3"),
        "discrete2": FinitePoset.discrete(["a", "b"], name="discrete2"),
        "V3": FinitePoset(["p", "m", "z"], [("p", "m"), ("p", "z")], name="V3"),
        "empty": FinitePoset([], name="empty"),
    }


def discrete(k, name=None):
    return FinitePoset.discrete([f"y{i}" for i in range(k)], name=name or f"discrete{k}")
