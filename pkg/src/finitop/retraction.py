"""Retraction configurations and the induced map on maximal limit sets.

A configuration is ``(X1, X2, Y, phi, psi)`` where ``phi`` embeds
``X1 × X2`` as a dense subspace ``Z`` of ``Y`` and ``psi: Y -> X1 × X2`` is a
continuous retraction (``psi ∘ phi = id``). When, for all maximal limit sets
``M1, M2``, the preimage ``psi⁻¹(M1 × M2)`` is the closure of
``phi(M1 × M2)``, the map

    theta(M1, M2) = psi⁻¹(M1 × M2)

is a homeomorphism ``ML(X1) × ML(X2) -> ML(Y)``. Without that closure
condition it can fail; :func:`cfg0` is a four-point example and
:func:`search_counterexample` mines more.
"""

import itertools
from dataclasses import dataclass, field

from . import kernels
from .corpus import automorphisms, posets_up_to_iso
from .errors import CapacityError, InvalidInput
from .limits import max_limit_sets
from .poset import (
    FinitePoset,
    PointSet,
    SpaceMap,
    bits,
    closure,
    is_dense,
    is_homeomorphism,
    is_homeomorphism_onto_image,
    pair_name,
    product,
    rectangle,
)
from .topology import is_continuous_map, is_open_map, product_topology


class RetractionConfig:
    def __init__(self, x1, x2, y, phi, psi, name=None):
        self.x1, self.x2, self.y = x1, x2, y
        self.prod = product(x1, x2)
        if phi.source != self.prod or phi.target != y:
            raise InvalidInput("phi must map product(x1, x2) into y")
        if psi.source != y or psi.target != self.prod:
            raise InvalidInput("psi must map y into product(x1, x2)")
        self.phi, self.psi = phi, psi
        self.name = name

    def __repr__(self):
        return f"<RetractionConfig {self.name or ''} |Y|={self.y.n}>"

    @property
    def z(self):
        """The image of ``phi``."""
        return self.phi.image_of(self.prod.whole())


@dataclass
class Check:
    name: str
    passed: bool
    witness: str = ""

    def line(self):
        status = "pass" if self.passed else "FAIL"
        tail = f"  ({self.witness})" if self.witness else ""
        return f"{status}  {self.name}{tail}"


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def lines(self):
        return [c.line() for c in self.checks]


def _monotonicity_violation(f):
    src, tgt = f.source, f.target
    for i in range(src.n):
        for j in bits(src.below[i]):
            if not tgt.below[f.images[i]] >> f.images[j] & 1:
                a, b = src.elements[j], src.elements[i]
                return f"{a}<={b} but {f(a)} is not <= {f(b)}"
    return None


def validate_config(c):
    """Check the four side conditions; failures are reported, never raised."""
    report = ValidationReport()

    bad = _monotonicity_violation(c.phi)
    if bad:
        report.checks.append(Check("phi homeomorphism onto image", False, "not continuous: " + bad))
    elif not c.phi.is_injective():
        a, b = next(
            (a, b) for a, b in itertools.combinations(c.prod.elements, 2) if c.phi(a) == c.phi(b)
        )
        report.checks.append(
            Check("phi homeomorphism onto image", False, f"not injective: {a} and {b} -> {c.phi(a)}")
        )
    elif not is_homeomorphism_onto_image(c.phi):
        a, b = next(
            (a, b) for a in c.prod.elements for b in c.prod.elements
            if c.y.leq(c.phi(a), c.phi(b)) and not c.prod.leq(a, b)
        )
        report.checks.append(
            Check("phi homeomorphism onto image", False,
                  f"not open onto image: {c.phi(a)}<={c.phi(b)} but not {a}<={b}")
        )
    else:
        report.checks.append(Check("phi homeomorphism onto image", True))

    z = c.z
    if is_dense(z):
        report.checks.append(Check("image of phi dense", True))
    else:
        lonely = next(
            x for x in c.y.elements if not c.y.above[c.y.index[x]] & z.mask
        )
        report.checks.append(
            Check("image of phi dense", False, f"open set ↑{lonely} misses the image")
        )

    bad = _monotonicity_violation(c.psi)
    report.checks.append(Check("psi continuous", bad is None, bad or ""))

    off = [p for p in c.prod.elements if c.psi(c.phi(p)) != p]
    report.checks.append(
        Check("psi ∘ phi = id", not off,
              f"{off[0]} -> {c.psi(c.phi(off[0]))}" if off else "")
    )
    return report


@dataclass
class HypothesisWitness:
    m1: PointSet
    m2: PointSet
    preimage: PointSet
    closure: PointSet

    def lines(self):
        return [
            f"M1 = {self.m1}",
            f"M2 = {self.m2}",
            f"psi^-1(M1 x M2) = {self.preimage}",
            f"closure(phi(M1 x M2)) = {self.closure}",
        ]


@dataclass
class HypothesisResult:
    holds: bool
    witness: HypothesisWitness = None

    def __bool__(self):
        return self.holds


class HypothesisFailed(InvalidInput):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            f"closure hypothesis fails at M1={witness.m1}, M2={witness.m2}: "
            f"{witness.preimage} != {witness.closure}"
        )


def _require_valid(c):
    report = validate_config(c)
    if not report.ok:
        raise InvalidInput("invalid configuration: " + "; ".join(x.line() for x in report.failed()))


def check_hypothesis(c):
    """Compare ``psi⁻¹(M1 × M2)`` with ``closure(phi(M1 × M2))`` for every pair."""
    _require_valid(c)
    for m1 in max_limit_sets(c.x1):
        for m2 in max_limit_sets(c.x2):
            r = rectangle(c.prod, m1, m2)
            pre = c.psi.preimage_of(r)
            cl = closure(c.phi.image_of(r))
            if pre != cl:
                return HypothesisResult(False, HypothesisWitness(m1, m2, pre, cl))
    return HypothesisResult(True)


class ThetaMap:
    """``(M1, M2) -> psi⁻¹(M1 × M2)`` together with its verification results."""

    def __init__(self, config):
        self.config = c = config
        self.ml1 = max_limit_sets(c.x1)
        self.ml2 = max_limit_sets(c.x2)
        self.mly = max_limit_sets(c.y)
        self.assignment = {}
        for m1 in self.ml1:
            for m2 in self.ml2:
                self.assignment[(m1, m2)] = c.psi.preimage_of(rectangle(c.prod, m1, m2))
        self.checks = {}

    def __call__(self, m1, m2):
        return self.assignment[(m1, m2)]

    def __len__(self):
        return len(self.assignment)

    @property
    def ok(self):
        return bool(self.checks) and all(self.checks.values())

    def domain_poset(self):
        return product(self.ml1.as_subspace, self.ml2.as_subspace)

    def as_space_map(self):
        """Theta as a map between the inclusion posets, or None if a value is not in ML(Y)."""
        dom = self.domain_poset()
        out = {}
        for (m1, m2), v in self.assignment.items():
            if v.mask not in self.mly.family.position:
                return None
            out[pair_name(self.ml1.point(m1), self.ml2.point(m2))] = self.mly.point(v)
        return SpaceMap(dom, self.mly.as_subspace, out)

    def verify(self):
        """Run every check; results land in :attr:`checks`."""
        values = list(self.assignment.values())
        members = {m.mask for m in self.mly}
        self.checks["values in ML(Y)"] = all(v.mask in members for v in values)
        self.checks["injective"] = len({v.mask for v in values}) == len(values)
        self.checks["onto ML(Y)"] = {v.mask for v in values} == members
        if not self.checks["values in ML(Y)"]:
            self.checks["continuous"] = False
            self.checks["inverse continuous"] = False
            return self

        t1 = self.ml1.family.lower_vietoris()
        t2 = self.ml2.family.lower_vietoris()
        dom = product_topology(t1, t2)
        ty = self.mly.family.lower_vietoris()
        n2 = self.ml2.as_subspace.n
        images = [0] * (t1.n * n2)
        for (m1, m2), v in self.assignment.items():
            a = self.ml1.family.position[m1.mask]
            b = self.ml2.family.position[m2.mask]
            images[a * n2 + b] = self.mly.family.position[v.mask]
        self.checks["continuous"] = is_continuous_map(images, dom, ty)
        bijective = self.checks["injective"] and self.checks["onto ML(Y)"]
        self.checks["inverse continuous"] = bijective and is_open_map(images, dom, ty)
        self.checks["order isomorphism agrees"] = (
            is_homeomorphism(self.as_space_map())
            == (bijective and self.checks["continuous"] and self.checks["inverse continuous"])
        )
        self.checks["hit-set formula agrees"] = theta_subbasic_agreement(self)
        return self

    def lines(self):
        out = []
        for (m1, m2), v in self.assignment.items():
            out.append(f"({m1}, {m2}) -> {v}")
        out.extend(f"{'pass' if ok else 'FAIL'}  {name}" for name, ok in self.checks.items())
        return out


def theta_subbasic_agreement(theta):
    """Cross-check continuity through hit sets of ``Y`` and open rectangles.

    For each open ``U`` of ``Y`` the pairs whose image meets ``U`` must be the
    union, over points ``(a, b)`` of ``phi⁻¹(U)``, of
    ``{M1 : M1 ∩ ↑a ≠ ∅} × {M2 : M2 ∩ ↑b ≠ ∅}``. The union over all points of
    an up-set of rectangles ``↑a × ↑b`` is that up-set, which is why single
    points suffice.
    """
    c = theta.config
    for u in c.y.upsets():
        lhs = {pair for pair, v in theta.assignment.items() if v.mask & u}
        pre = kernels.preimage(u, c.phi.images)
        rhs = set()
        for i in bits(pre):
            a, b = c.prod.pair_of(i)
            up_a = c.x1.above[c.x1.index[a]]
            up_b = c.x2.above[c.x2.index[b]]
            for m1 in theta.ml1:
                if not m1.mask & up_a:
                    continue
                for m2 in theta.ml2:
                    if m2.mask & up_b:
                        rhs.add((m1, m2))
        if lhs != rhs:
            return False
    return True


def build_theta(c):
    """Construct and verify theta. Refuses when the closure hypothesis fails."""
    result = check_hypothesis(c)
    if not result.holds:
        raise HypothesisFailed(result.witness)
    return ThetaMap(c).verify()


# example configurations

def identity_config(x1, x2, name=None):
    p = product(x1, x2)
    ident = SpaceMap.identity(p)
    return RetractionConfig(x1, x2, p, ident, ident, name=name)


def cfg0():
    """Four-point configuration violating the closure hypothesis.

    ``X1 = {p < m, p < z1}``, ``X2`` a point, ``Y = X1 ⊔ {y*}`` with ``y* < z1``
    only, ``phi`` the inclusion and ``psi(y*) = p``. For ``M1 = {p, m}`` the
    preimage is ``{p, m, y*}`` while the closure of ``phi(M1 × M2)`` is ``{p, m}``.
    """
    x1 = FinitePoset(["p", "m", "z1"], [("p", "m"), ("p", "z1")], name="X1")
    x2 = FinitePoset.point()
    y = FinitePoset(
        ["p", "m", "z1", "y*"], [("p", "m"), ("p", "z1"), ("y*", "z1")], name="Y4"
    )
    prod = product(x1, x2)
    phi = SpaceMap(prod, y, {pair_name(a, "*"): a for a in x1.elements}, name="incl")
    back = {a: pair_name(a, "*") for a in x1.elements}
    back["y*"] = pair_name("p", "*")
    psi = SpaceMap(y, prod, back, name="ret")
    return RetractionConfig(x1, x2, y, phi, psi, name="CFG0")


# isomorphism of configurations

def _bijections(a, b):
    for perm in itertools.permutations(b):
        yield dict(zip(a, perm))


def configs_isomorphic(c1, c2):
    """Brute-force test for an isomorphism of configurations.

    That is a triple of order isomorphisms ``s1: X1 -> X1'``,
    ``s2: X2 -> X2'``, ``t: Y -> Y'`` with ``t ∘ phi = phi' ∘ (s1 × s2)`` and
    ``psi' ∘ t = (s1 × s2) ∘ psi``.
    """
    from .corpus import isomorphisms

    if c1.y.n != c2.y.n:
        return False
    for s1 in isomorphisms(c1.x1, c2.x1):
        for s2 in isomorphisms(c1.x2, c2.x2):
            def s(p, s1=s1, s2=s2):
                a, b = c1.prod.pair_of(c1.prod.index[p])
                return pair_name(s1[a], s2[b])

            t = {}
            consistent = True
            for p in c1.prod.elements:
                src, dst = c1.phi(p), c2.phi(s(p))
                if t.setdefault(src, dst) != dst:
                    consistent = False
                    break
            if not consistent or len(set(t.values())) != len(t):
                continue
            rest1 = [x for x in c1.y.elements if x not in t]
            rest2 = [x for x in c2.y.elements if x not in set(t.values())]
            for extra in _bijections(rest1, rest2):
                tt = {**t, **extra}
                if any(
                    c1.y.leq(a, b) != c2.y.leq(tt[a], tt[b])
                    for a in c1.y.elements for b in c1.y.elements
                ):
                    continue
                if all(c2.psi(tt[x]) == s(c1.psi(x)) for x in c1.y.elements):
                    return True
    return False


# counterexample mining

def _extend(below, above):
    """Add one point in every admissible way. Returns (below, above) lists."""
    n = len(below)
    downsets = kernels.enumerate_downsets(
        sorted(range(n), key=lambda i: bin(below[i]).count("1")), below, 1 << 30
    )
    up_order = sorted(range(n), key=lambda i: bin(above[i]).count("1"))
    out = []
    for d, u in kernels.extension_pairs(below, above, downsets, up_order):
        e = 1 << n
        nb = list(below) + [d | e]
        na = list(above) + [u | e]
        for i in bits(u):
            nb[i] |= d | e
        for i in bits(d):
            na[i] |= u | e
        out.append((nb, na))
    return out


def _above_from_below(below):
    above = [0] * len(below)
    for i, b in enumerate(below):
        for j in bits(b):
            above[j] |= 1 << i
    return above


@dataclass
class _MinedConfig:
    x1: FinitePoset
    x2: FinitePoset
    below: tuple
    psi_vals: tuple
    key: tuple


def _product_perms(x1, x2, prod):
    out = []
    for s1 in automorphisms(x1):
        for s2 in automorphisms(x2):
            perm = [0] * prod.n
            for a in x1.elements:
                for b in x2.elements:
                    perm[prod.pair_index[(a, b)]] = prod.pair_index[(s1[a], s2[b])]
            out.append(tuple(perm))
    return out


_MODES = {"hold": 0, "fail": 1, "any": 2}


def mined_configs(max_extra, max_factor_size, want):
    """Valid configurations of the mining universe, one per isomorphism class.

    ``want`` filters on the closure hypothesis: ``"fail"``, ``"hold"`` or ``"any"``.
    Isomorphisms fix the two factors up to automorphism and may permute the
    extra points.
    """
    mode = _MODES[want]
    factors = [p for n in range(1, max_factor_size + 1) for p in posets_up_to_iso(n)]
    found = {}
    for x1 in factors:
        for x2 in factors:
            prod = product(x1, x2)
            n_prod = prod.n
            perms = _product_perms(x1, x2, prod)
            rects = [
                rectangle(prod, m1, m2).mask
                for m1 in max_limit_sets(x1) for m2 in max_limit_sets(x2)
            ]
            prod_below = list(prod.below)
            head = (x1.n, x2.n, x1.name, x2.name)
            if mode != 1:
                # No extra points: psi is the identity and rectangles of closed sets are closed.
                key = head + (0,) + kernels.canonical_config_key(prod_below, (), n_prod, perms)
                found.setdefault(key, _MinedConfig(x1, x2, tuple(prod_below), (), key))
            layer = [(prod_below, list(prod.above))]
            for k in range(1, max_extra + 1):
                for below, above in layer:
                    for nb, psi in kernels.scan_extensions(below, above, n_prod, prod_below, rects, mode):
                        key = head + (k,) + kernels.canonical_config_key(nb, psi, n_prod, perms)
                        if key not in found:
                            found[key] = _MinedConfig(x1, x2, nb, psi, key)
                if k == max_extra:
                    break
                nxt = {}
                for below, above in layer:
                    for nb, na in _extend(below, above):
                        key = kernels.canonical_config_key(nb, (0,) * k, n_prod, perms)
                        nxt.setdefault(key, (nb, na))
                layer = list(nxt.values())
    return [found[key] for key in sorted(found)]


def _materialize(mc, index, prefix="CEX"):
    x1, x2 = mc.x1, mc.x2
    prod = product(x1, x2)
    k = len(mc.psi_vals)
    names = list(prod.elements) + [f"y{j + 1}" for j in range(k)]
    pairs = [
        (names[j], names[i]) for i, b in enumerate(mc.below) for j in bits(b) if i != j
    ]
    y = FinitePoset(names, pairs, name=f"Y{index}")
    phi = SpaceMap(prod, y, {p: p for p in prod.elements}, name=f"phi{index}")
    back = {p: p for p in prod.elements}
    for j, v in enumerate(mc.psi_vals):
        back[f"y{j + 1}"] = prod.elements[v]
    psi = SpaceMap(y, prod, back, name=f"psi{index}")
    return RetractionConfig(x1, x2, y, phi, psi, name=f"{prefix}{index}")


DEFAULT_MAX_EXTRA = 2
DEFAULT_MAX_FACTOR_SIZE = 3
HARD_MAX_EXTRA = 2
HARD_MAX_FACTOR_SIZE = 3


def search_counterexample(max_extra_points=DEFAULT_MAX_EXTRA, max_factor_size=DEFAULT_MAX_FACTOR_SIZE):
    """Every configuration in the mining universe where the closure hypothesis fails.

    The universe: ``X1``, ``X2`` range over posets with at most
    ``max_factor_size`` points (one per isomorphism class), ``Y`` is
    ``X1 × X2`` plus at most ``max_extra_points`` new points in every order
    extension that leaves the product order alone and keeps the product
    dense, ``phi`` is the inclusion, ``psi`` any continuous retraction.
    Results are deduplicated up to isomorphism and canonically ordered.
    """
    return enumerate_configs(max_extra_points, max_factor_size, "fail")


def enumerate_configs(max_extra_points, max_factor_size, want="any"):
    """Every configuration of the mining universe up to isomorphism.

    ``want`` keeps those where the closure hypothesis fails (``"fail"``),
    holds (``"hold"``), or all of them (``"any"``).
    """
    if want not in _MODES:
        raise InvalidInput(f"want must be one of {', '.join(_MODES)}")
    if max_extra_points < 0 or max_factor_size < 1:
        raise InvalidInput("bounds must be max_extra_points >= 0 and max_factor_size >= 1")
    if max_extra_points > HARD_MAX_EXTRA or max_factor_size > HARD_MAX_FACTOR_SIZE:
        raise CapacityError(
            f"miner bounds are capped at {HARD_MAX_EXTRA} extra points "
            f"and factors of {HARD_MAX_FACTOR_SIZE} points"
        )
    mined = mined_configs(max_extra_points, max_factor_size, want)
    prefix = "CEX" if want == "fail" else "CFG"
    return [_materialize(mc, i + 1, prefix) for i, mc in enumerate(mined)]


def _psi_choices(prod, below):
    """Values on the extra points of every continuous retraction ``Y -> X1 × X2``."""
    k = len(below) - prod.n
    base = list(range(prod.n))
    out = []
    for combo in itertools.product(range(prod.n), repeat=k):
        if kernels.is_monotone(below, base + list(combo), list(prod.below)):
            out.append(combo)
    return out


def random_config(rng, max_factor_size=3, max_extra=1):
    """A random valid configuration from the mining universe (hypothesis not filtered)."""
    factors = [p for n in range(1, max_factor_size + 1) for p in posets_up_to_iso(n)]
    while True:
        x1, x2 = rng.choice(factors), rng.choice(factors)
        prod = product(x1, x2)
        below, above = list(prod.below), list(prod.above)
        k = rng.randint(0, max_extra)
        for _ in range(k):
            below, above = rng.choice(_extend(below, above))
        if kernels.down_closure(prod.full, below) != (1 << len(below)) - 1:
            continue
        choices = _psi_choices(prod, below)
        if not choices:
            continue
        combo = rng.choice(choices)
        mc = _MinedConfig(x1, x2, tuple(below), combo, ())
        return _materialize(mc, 0)
