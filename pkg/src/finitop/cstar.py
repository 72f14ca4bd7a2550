"""Finite-dimensional C*-algebras as lists of matrix blocks.

``A = M_{n_1} ⊕ ... ⊕ M_{n_k}``. Every closed two-sided ideal is a sum of
whole blocks, so it is fixed by the set of blocks it misses: its hull, the
primitive ideals ``P_b`` (everything except block ``b``) that contain it. The
primitive and prime ideal spaces are both the discrete space on the blocks.

The minimal tensor product of two block algebras is again a block algebra,
``M_n ⊗ M_m = M_{nm}`` on each pair of blocks ``(b, c)``.

Derivations used below, with ``H_j`` the hull of ``I_j``:

* ``A_j / I_j`` is the sum of the blocks in ``H_j`` and ``q_{I_j}`` projects
  onto them, so ``q_{I_1} ⊗ q_{I_2}`` projects onto the blocks ``H_1 × H_2``
  and its kernel ``Φ(I_1, I_2)`` is the sum of all other blocks.
* ``I_1 ⊗ A_2 + A_1 ⊗ I_2`` is the sum of the blocks ``(b, c)`` with
  ``b`` in the support of ``I_1`` or ``c`` in the support of ``I_2``.
* ``a_1 ⊗ A_2 ⊂ I`` exactly when ``a_1`` vanishes on every block ``b`` that
  has some ``(b, c)`` outside the support of ``I``. So ``I_{A_1}`` is supported
  on the ``b`` with every ``(b, c)`` in the support of ``I``; likewise ``I_{A_2}``.
"""

import itertools
from dataclasses import dataclass, field

from .envelope import sobrify
from .errors import CapacityError, InvalidInput
from .hyperspace import build_hyperspace
from .limits import is_limit_set, max_limit_sets
from .poset import (
    FinitePoset,
    SpaceMap,
    closure,
    is_continuous,
    is_dense,
    is_homeomorphism_onto_image,
    pair_name,
    product,
    rectangle,
    subspace,
)
from .retraction import RetractionConfig, build_theta, check_hypothesis, validate_config

MAX_BLOCKS = 4


@dataclass(frozen=True)
class BlockAlgebra:
    blocks: tuple
    name: str = None
    factors: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        blocks = tuple((str(b), int(n)) for b, n in self.blocks)
        if not blocks:
            raise InvalidInput("an algebra needs at least one block")
        names = [b for b, _ in blocks]
        if len(set(names)) != len(names):
            raise InvalidInput("block names must be unique")
        for b, n in blocks:
            if n < 1:
                raise InvalidInput(f"block {b} has size {n}; sizes must be at least 1")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_sizes(cls, sizes, prefix="b", name=None):
        return cls(tuple((f"{prefix}{i + 1}", n) for i, n in enumerate(sizes)), name=name)

    @property
    def names(self):
        return tuple(b for b, _ in self.blocks)

    def size(self, block):
        return dict(self.blocks)[block]

    @property
    def dimension(self):
        return sum(n * n for _, n in self.blocks)

    def tensor(self, other, name=None):
        if name is None and self.name and other.name:
            name = f"{self.name}*{other.name}"
        blocks = tuple(
            (pair_name(b, c), n * m) for b, n in self.blocks for c, m in other.blocks
        )
        return BlockAlgebra(blocks, name=name, factors=(self, other))

    def __str__(self):
        body = " ".join(f"{b}:{n}" for b, n in self.blocks)
        return f"{self.name or 'A'} = [{body}]"


@dataclass(frozen=True)
class BlockIdeal:
    algebra: BlockAlgebra
    hull: frozenset

    def __post_init__(self):
        hull = frozenset(self.hull)
        unknown = hull - set(self.algebra.names)
        if unknown:
            raise InvalidInput(f"hull mentions unknown blocks: {', '.join(sorted(unknown))}")
        object.__setattr__(self, "hull", hull)

    @property
    def support(self):
        return frozenset(self.algebra.names) - self.hull

    @property
    def is_zero(self):
        return not self.support

    @property
    def is_whole(self):
        return not self.hull

    def contains(self, other):
        """``other ⊆ self`` as ideals."""
        return other.support <= self.support

    def product(self, other):
        """``I J``; for block ideals this is ``I ∩ J``."""
        return ideal_from_support(self.algebra, self.support & other.support)

    def sorted_hull(self):
        return [b for b in self.algebra.names if b in self.hull]

    def __str__(self):
        return "hull{" + ",".join(self.sorted_hull()) + "}"


def ideal_from_hull(a, hull):
    return BlockIdeal(a, frozenset(hull))


def ideal_from_support(a, support):
    support = frozenset(support)
    return BlockIdeal(a, frozenset(a.names) - support)


def zero_ideal(a):
    return ideal_from_hull(a, a.names)


def whole_algebra(a):
    return ideal_from_hull(a, ())


def primitive_ideal(a, block):
    return ideal_from_hull(a, [block])


def ideals(a):
    """Every ideal of ``a``, ordered by hull size then block order."""
    names = a.names
    out = []
    for k in range(len(names) + 1):
        for hull in itertools.combinations(names, k):
            out.append(ideal_from_hull(a, hull))
    return out


def proper_ideals(a):
    return [i for i in ideals(a) if not i.is_whole]


def _check_blocks(*algebras):
    for a in algebras:
        if len(a.blocks) > MAX_BLOCKS:
            raise CapacityError(f"{a.name or 'algebra'} has more than {MAX_BLOCKS} blocks")


# spaces

def prim_space(a):
    """Primitive ideal space: the discrete space on the blocks (``b`` stands for ``P_b``)."""
    return FinitePoset.discrete(a.names, name=f"Prim({a.name})" if a.name else None)


def prime_space(a):
    """Prime ideal space, obtained as the envelope of the primitive ideal space."""
    prim = prim_space(a)
    env = sobrify(prim)
    pairs = []
    point_of = {}
    for x in prim.elements:
        point_of[env.embedding(x)] = x
    for p, q in env.poset.order_pairs():
        pairs.append((point_of[p], point_of[q]))
    space = FinitePoset(list(point_of.values()), pairs,
                        name=f"Prime({a.name})" if a.name else None)
    if space != prim:
        raise AssertionError("prime and primitive ideal spaces differ for a block algebra")
    return space


def point_ideal(a, point):
    """The prime ideal named by a point of :func:`prime_space`."""
    return primitive_ideal(a, point)


def ideal_point(a, ideal):
    """The point of :func:`prime_space` for a prime ideal, or None if not prime."""
    for b in a.names:
        if primitive_ideal(a, b) == ideal:
            return b
    return None


def hull_of(ideal, space=None):
    """Prime ideals containing ``ideal``, as a closed set of the prime space."""
    a = ideal.algebra
    space = space or prime_space(a)
    return space.subset(b for b in space.elements if point_ideal(a, b).contains(ideal))


def kernel_of(a, s):
    """Intersection of the prime ideals in ``s``; the whole algebra for ``s = ∅``."""
    out = whole_algebra(a)
    for b in s:
        out = ideal_from_support(a, out.support & point_ideal(a, b).support)
    return out


# tensor maps

def _tensor_of(i1, i2, tensor):
    t = tensor or i1.algebra.tensor(i2.algebra)
    if t.factors is not None and (t.factors[0] != i1.algebra or t.factors[1] != i2.algebra):
        raise InvalidInput("tensor algebra does not match the factors")
    return t


def phi(i1, i2, tensor=None):
    """``ker(q_{I1} ⊗ q_{I2})``."""
    t = _tensor_of(i1, i2, tensor)
    kept = {pair_name(b, c) for b in i1.hull for c in i2.hull}
    return ideal_from_support(t, [x for x in t.names if x not in kept])


def delta(i1, i2, tensor=None):
    """``I1 ⊗ A2 + A1 ⊗ I2``."""
    t = _tensor_of(i1, i2, tensor)
    a1, a2 = i1.algebra, i2.algebra
    left = {pair_name(b, c) for b in i1.support for c in a2.names}
    right = {pair_name(b, c) for b in a1.names for c in i2.support}
    return ideal_from_support(t, left | right)


def psi(i):
    """``(I_{A1}, I_{A2})`` for an ideal of a tensor algebra."""
    t = i.algebra
    if t.factors is None:
        raise InvalidInput("psi needs an ideal of a tensor product algebra")
    a1, a2 = t.factors
    supp = i.support
    s1 = [b for b in a1.names if all(pair_name(b, c) in supp for c in a2.names)]
    s2 = [c for c in a2.names if all(pair_name(b, c) in supp for b in a1.names)]
    return ideal_from_support(a1, s1), ideal_from_support(a2, s2)


def phi_map(a1, a2, tensor=None):
    """Φ on prime ideals as a map ``Prime(A1) × Prime(A2) -> Prime(A1 ⊗ A2)``."""
    t = tensor or a1.tensor(a2)
    x1, x2, y = prime_space(a1), prime_space(a2), prime_space(t)
    prod = product(x1, x2)
    out = {}
    for b in x1.elements:
        for c in x2.elements:
            image = phi(point_ideal(a1, b), point_ideal(a2, c), t)
            pt = ideal_point(t, image)
            if pt is None:
                raise AssertionError(f"phi of prime ideals is not prime: {image}")
            out[pair_name(b, c)] = pt
    return SpaceMap(prod, y, out, name="Phi")


def psi_map(a1, a2, tensor=None):
    """Ψ on prime ideals as a map ``Prime(A1 ⊗ A2) -> Prime(A1) × Prime(A2)``."""
    t = tensor or a1.tensor(a2)
    x1, x2, y = prime_space(a1), prime_space(a2), prime_space(t)
    prod = product(x1, x2)
    out = {}
    for p in y.elements:
        j1, j2 = psi(point_ideal(t, p))
        b, c = ideal_point(a1, j1), ideal_point(a2, j2)
        if b is None or c is None:
            raise AssertionError(f"psi of a prime ideal is not a pair of primes: {j1}, {j2}")
        out[p] = pair_name(b, c)
    return SpaceMap(y, prod, out, name="Psi")


# reports

@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def add(self, name, passed, detail=""):
        self.checks.append((name, bool(passed)))
        if not passed:
            self.failures.append(f"{name}: {detail}" if detail else name)

    @property
    def ok(self):
        return not self.failures and bool(self.checks)

    def lines(self):
        n = len(self.checks)
        passed = sum(ok for _, ok in self.checks)
        out = [f"{self.title}: {passed}/{n} checks passed"]
        out.extend(f"FAIL  {f}" for f in self.failures)
        out.append("PASS" if self.ok else "FAIL")
        return out


def verify_hull_identities(a1, a2):
    """Both hull identities for every pair of ideals (including ``A`` and ``0``)."""
    _check_blocks(a1, a2)
    t = a1.tensor(a2)
    x1, x2, y = prime_space(a1), prime_space(a2), prime_space(t)
    prod = product(x1, x2)
    f, g = phi_map(a1, a2, t), psi_map(a1, a2, t)
    report = Report(f"hull identities for {a1.name or 'A1'} (x) {a2.name or 'A2'}")
    for i1 in ideals(a1):
        for i2 in ideals(a2):
            h1, h2 = hull_of(i1, x1), hull_of(i2, x2)
            rect = rectangle(prod, h1, h2)
            lhs = hull_of(delta(i1, i2, t), y)
            rhs = g.preimage_of(rect)
            report.add(f"hull delta({i1},{i2})", lhs == rhs, f"{lhs} != {rhs}")
            lhs = hull_of(phi(i1, i2, t), y)
            rhs = closure(f.image_of(rect))
            report.add(f"hull phi({i1},{i2})", lhs == rhs, f"{lhs} != {rhs}")
    return report


def verify_map_facts(a1, a2):
    """Ψ∘Φ = id on proper pairs; Φ = Δ; Φ embeds ``Id'×Id'`` densely in ``Id'`` of the tensor."""
    _check_blocks(a1, a2)
    t = a1.tensor(a2)
    report = Report(f"tensor map facts for {a1.name or 'A1'} (x) {a2.name or 'A2'}")
    for i1 in ideals(a1):
        for i2 in ideals(a2):
            report.add(f"phi = delta at ({i1},{i2})", phi(i1, i2, t) == delta(i1, i2, t))
    for i1 in proper_ideals(a1):
        for i2 in proper_ideals(a2):
            back = psi(phi(i1, i2, t))
            report.add(f"psi(phi({i1},{i2})) = id", back == (i1, i2),
                       f"got ({back[0]},{back[1]})")
    l1, l2, lt = IdealLattice(a1), IdealLattice(a2), IdealLattice(t)
    d1, d2, dt = l1.proper_subspace(), l2.proper_subspace(), lt.proper_subspace()
    dom = product(d1, d2)
    assignment = {}
    for i1 in proper_ideals(a1):
        for i2 in proper_ideals(a2):
            assignment[pair_name(l1.name_of(i1), l2.name_of(i2))] = lt.name_of(phi(i1, i2, t))
    fmap = SpaceMap(dom, dt, assignment)
    cont = is_continuous(fmap)
    report.add("phi continuous on Id'xId'", cont)
    report.add("phi injective on Id'xId'", fmap.is_injective())
    report.add("phi homeomorphism onto image", cont and is_homeomorphism_onto_image(fmap))
    report.add("phi image dense in Id'(tensor)", is_dense(fmap.image_of(dom.whole())))
    return report


class IdealLattice:
    """``Id(A)`` with the topology pulled back from the hyperspace of ``Prime(A)``.

    :attr:`as_poset` orders ideals by reverse inclusion, computed from supports.
    :attr:`as_hyperspace` is the hyperspace of the prime space.
    """

    def __init__(self, a):
        self.algebra = a
        self.ideals = ideals(a)
        self.space = prime_space(a)
        self.as_hyperspace = build_hyperspace(self.space)
        names = [self.name_of(i) for i in self.ideals]
        # Reverse inclusion of ideals is inclusion of hulls; compare as bitmasks.
        bit = {b: 1 << k for k, b in enumerate(a.names)}
        masks = [sum(bit[b] for b in i.hull) for i in self.ideals]
        pairs = [
            (names[x], names[y])
            for x, mx in enumerate(masks) for y, my in enumerate(masks)
            if x != y and mx & my == mx
        ]
        self.as_poset = FinitePoset(names, pairs, name=f"Id({a.name})" if a.name else None)

    @staticmethod
    def name_of(ideal):
        return str(ideal)

    def ideal(self, name):
        for i in self.ideals:
            if str(i) == name:
                return i
        raise InvalidInput(f"no ideal named {name}")

    def hull_map(self):
        """``I -> hull(I)`` as a map into the hyperspace poset."""
        h = self.as_hyperspace
        return SpaceMap(
            self.as_poset, h.as_poset,
            {self.name_of(i): h.point(hull_of(i, self.space)) for i in self.ideals},
        )

    def proper_subspace(self):
        whole = self.name_of(whole_algebra(self.algebra))
        keep = [x for x in self.as_poset.elements if x != whole]
        return subspace(self.as_poset.subset(keep), name=f"Id'({self.algebra.name})")


# primal ideals

def is_primal(ideal):
    """Topological test: the hull is a limit set of the prime space."""
    if ideal.is_whole:
        raise InvalidInput("the whole algebra has empty hull")
    return is_limit_set(hull_of(ideal))


def is_primal_algebraic(ideal, max_family=3):
    """``I`` contains a member of every family of 2..``max_family`` ideals with zero product."""
    a = ideal.algebra
    everything = ideals(a)
    for k in range(2, max_family + 1):
        for fam in itertools.combinations_with_replacement(everything, k):
            prod_ = fam[0]
            for j in fam[1:]:
                prod_ = prod_.product(j)
            if prod_.is_zero and not any(ideal.contains(j) for j in fam):
                return False
    return True


def min_primal(a):
    """Minimal primal ideals: the kernels of the maximal limit sets of ``Prime(a)``."""
    space = prime_space(a)
    return [kernel_of(a, m) for m in max_limit_sets(space)]


def min_primal_algebraic(a, max_family=3):
    primal = [i for i in proper_ideals(a) if is_primal_algebraic(i, max_family)]
    return [i for i in primal if not any(j != i and i.contains(j) for j in primal)]


def tensor_config(a1, a2, tensor=None):
    """The retraction configuration ``(Prime(A1), Prime(A2), Prime(A1⊗A2), Φ, Ψ)``."""
    t = tensor or a1.tensor(a2)
    return RetractionConfig(
        prime_space(a1), prime_space(a2), prime_space(t),
        phi_map(a1, a2, t), psi_map(a1, a2, t),
        name=f"tensor({a1.name},{a2.name})",
    )


@dataclass
class TheoremReport(Report):
    theta: object = None


def verify_theorem_min(a1, a2):
    """Φ maps ``MinPrimal(A1) × MinPrimal(A2)`` homeomorphically onto ``MinPrimal(A1 ⊗ A2)``."""
    _check_blocks(a1, a2)
    t = a1.tensor(a2)
    report = TheoremReport(f"minimal primal ideals of {a1.name or 'A1'} (x) {a2.name or 'A2'}")
    mp1, mp2, mpt = min_primal(a1), min_primal(a2), min_primal(t)
    for i1 in mp1:
        for i2 in mp2:
            report.add(f"phi = delta at ({i1},{i2})", phi(i1, i2, t) == delta(i1, i2, t))

    c = tensor_config(a1, a2, t)
    valid = validate_config(c)
    report.add("induced configuration valid", valid.ok, "; ".join(x.line() for x in valid.failed()))
    if not valid.ok:
        return report
    hyp = check_hypothesis(c)
    report.add("closure hypothesis", hyp.holds, " ".join(hyp.witness.lines()) if hyp.witness else "")
    if not hyp.holds:
        return report
    theta = build_theta(c)
    report.theta = theta
    for name, ok in theta.checks.items():
        report.add(f"theta {name}", ok)

    y = c.y
    images = []
    for (m1, m2), value in theta.assignment.items():
        ideal = phi(kernel_of(a1, m1), kernel_of(a2, m2), t)
        report.add(f"theta({m1},{m2}) = hull phi(ker, ker)", hull_of(ideal, y) == value,
                   f"{hull_of(ideal, y)} != {value}")
        images.append(kernel_of(t, value))
    report.add("theta image = MinPrimal(tensor)",
               sorted(map(str, images)) == sorted(map(str, mpt)) and len(set(images)) == len(images))
    phis = {phi(i1, i2, t) for i1 in mp1 for i2 in mp2}
    report.add("phi bijects MinPrimal pairs onto MinPrimal(tensor)",
               phis == set(mpt) and len(phis) == len(mp1) * len(mp2))
    return report


def algebras_up_to(max_blocks, sizes=(1, 2, 3)):
    """Block algebras with 1..``max_blocks`` blocks; sizes cycle through ``sizes``."""
    out = []
    for k in range(1, max_blocks + 1):
        out.append(BlockAlgebra.from_sizes([sizes[i % len(sizes)] for i in range(k)], name=f"A{k}"))
    return out

