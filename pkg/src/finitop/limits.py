"""Limit sets and maximal limit sets.

A nonempty set ``L`` is a limit set when every finite family of open sets,
each meeting ``L``, has nonempty intersection. In a finite space that
happens exactly when the points of ``L`` have a common upper bound, and the
maximal limit sets are the principal down-sets of maximal points.
"""

from dataclasses import dataclass

from . import kernels
from .cofinite import CofiniteSpace, cf_max_limit_sets
from .errors import InvalidInput
from .hyperspace import ClosedSetFamily
from .poset import FinitePoset, PointSet, is_closed, mask_key


def _check_nonempty(l):
    if not l:
        raise InvalidInput("limit sets are nonempty")


def limit_witness(l, method="literal"):
    """A finite family of open sets meeting ``l`` with empty intersection, or None.

    ``method="literal"`` ranges over families drawn from every open set that
    meets ``l``; ``method="neighbourhoods"`` only over the smallest open sets
    ``↑x`` of points ``x`` in ``l``.
    """
    _check_nonempty(l)
    space = l.space
    if method == "literal":
        opens = [u for u in space.upsets() if u & l.mask]
    elif method == "neighbourhoods":
        opens = [space.above[i] for i in range(space.n) if l.mask >> i & 1]
    else:
        raise ValueError(f"unknown method {method!r}")
    # Small opens first so a failing pair tends to show up early.
    opens.sort(key=mask_key)
    fam = kernels.family_witness(opens, space.full)
    if fam is None:
        return None
    return [PointSet(space, opens[i]) for i in fam]


def is_limit_set(l, method="fast"):
    """Dieudonné's criterion for the nonempty point set ``l``.

    ``"fast"`` asks for a common upper bound; ``"literal"`` and
    ``"neighbourhoods"`` search families of open sets (see :func:`limit_witness`).
    """
    _check_nonempty(l)
    if method == "fast":
        space = l.space
        return kernels.common_upper_bounds(l.mask, space.above, space.full) != 0
    return limit_witness(l, method) is None


@dataclass
class MaxLimitFamily:
    """Maximal limit sets of a finite space, with their relative hyperspace topology."""

    base: FinitePoset
    members: tuple

    def __post_init__(self):
        self.family = ClosedSetFamily(self.base, [m.mask for m in self.members])
        self.as_subspace = self.family.as_poset
        self.as_subspace.name = f"ML({self.base.name})" if self.base.name else None

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def point(self, s):
        return self.family.point(s)

    def containing(self, l):
        """Members containing the point set ``l``."""
        return [m for m in self.members if l <= m]


@dataclass(frozen=True)
class SymbolicMaxLimitFamily:
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def max_limit_sets(x, method="fast"):
    """All maximal limit sets of ``x``, canonically ordered.

    ``"fast"`` returns ``↓m`` for each maximal point ``m``; ``"brute"`` finds
    every limit subset by the family criterion and keeps the maximal ones.
    """
    if isinstance(x, CofiniteSpace):
        return SymbolicMaxLimitFamily(tuple(cf_max_limit_sets()))
    if method == "fast":
        masks = [x.below[x.index[m]] for m in x.maximal()]
    elif method == "brute":
        masks = kernels.maximal_masks(all_limit_masks(x))
    else:
        raise ValueError(f"unknown method {method!r}")
    members = tuple(PointSet(x, m) for m in sorted(masks, key=mask_key))
    for m in members:
        if not is_closed(m):
            raise AssertionError(f"maximal limit set {m} is not closed")
    return MaxLimitFamily(x, members)


def all_limit_masks(x):
    """Every nonempty limit subset of ``x`` as a mask (exhaustive)."""
    return kernels.limit_masks(x.n, list(x.above))


def primal_check(hull):
    """Whether a closed set of a prime-ideal space is the hull of a primal ideal.

    An ideal is primal exactly when its hull is a limit set.
    """
    if not is_closed(hull):
        raise InvalidInput(f"{hull} is not closed")
    return is_limit_set(hull)
