import itertools

import pytest
from hypothesis import given

from conftest import corpus, poset_and_subset, posets
from finitop.errors import InvalidInput
from finitop.poset import (
    FinitePoset,
    PointSet,
    SpaceMap,
    closure,
    is_closed,
    is_continuous,
    is_dense,
    is_dense_by_opens,
    is_homeomorphism,
    is_homeomorphism_onto_image,
    is_open,
    open_hull,
    product,
    projections,
)
from finitop.retraction import cfg0
from finitop.topology import FiniteTopology, product_topology


def test_construction_rejects_cycles():
    with pytest.raises(InvalidInput, match="antisymmetric"):
        FinitePoset(["a", "b"], [("a", "b"), ("b", "a")])


def test_construction_rejects_intransitive_order():
    with pytest.raises(InvalidInput):
        FinitePoset(["a", "b", "c"], [("a", "b"), ("b", "c")])


def test_from_relations_closes_transitively():
    p = FinitePoset.from_relations(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq("a", "c")


@pytest.mark.parametrize("bad", [[""], ["a", "a"], [3]])
def test_construction_rejects_bad_names(bad):
    with pytest.raises(InvalidInput):
        FinitePoset(bad)


def test_elements_sorted_by_name():
    p = FinitePoset(["z", "a", "m"])
    assert p.elements == ("a", "m", "z")


def test_closure_examples(spaces):
    v3, chain3 = spaces["V3"], spaces["chain3"]
    assert set(closure(v3.subset(["m"])).members) == {"p", "m"}
    assert set(closure(v3.empty()).members) == set()
    assert set(closure(chain3.subset(["2"])).members) == {"0", "1", "2"}


def test_closure_rejects_foreign_points(spaces):
    with pytest.raises(InvalidInput):
        spaces["V3"].subset(["q"])


def test_continuity_examples(spaces):
    v3, c2, d2 = spaces["V3"], spaces["chain2"], spaces["discrete2"]
    f = SpaceMap(v3, c2, {"p": "0", "m": "1", "z": "0"})
    assert is_continuous(f) and is_continuous(f, "preimage")
    assert is_continuous(SpaceMap.identity(v3))
    g = SpaceMap(c2, d2, {"0": "a", "1": "b"})
    assert not is_continuous(g) and not is_continuous(g, "preimage")


def test_map_must_be_total_and_typed(spaces):
    v3, c2 = spaces["V3"], spaces["chain2"]
    with pytest.raises(InvalidInput):
        SpaceMap(v3, c2, {"p": "0"})
    with pytest.raises(InvalidInput):
        SpaceMap(v3, c2, {"p": "0", "m": "9", "z": "0"})


def test_product_examples(spaces):
    s, d2, pt = spaces["sierpinski"], spaces["discrete2"], spaces["point"]
    ss = product(s, s)
    assert ss.n == 4 and ss.leq("(0,0)", "(1,1)") and not ss.leq("(0,1)", "(1,0)")
    assert all(b == 1 << i for i, b in enumerate(product(d2, d2).below))
    v3 = spaces["V3"]
    f = SpaceMap(product(v3, pt), v3, {f"({a},*)": a for a in v3.elements})
    assert is_homeomorphism(f)


def test_density_examples(spaces):
    c = cfg0()
    assert is_dense(c.z)
    assert is_dense(spaces["V3"].whole())
    assert not is_dense(spaces["discrete2"].subset(["b"]))


def test_homeomorphism_onto_image_examples(spaces):
    c = cfg0()
    assert is_homeomorphism_onto_image(c.phi)
    const = SpaceMap(spaces["discrete2"], spaces["point"], {"a": "*", "b": "*"})
    assert not is_homeomorphism_onto_image(const)
    assert is_homeomorphism_onto_image(SpaceMap.identity(spaces["V3"]))


def test_homeomorphism_onto_image_requires_continuity(spaces):
    g = SpaceMap(spaces["chain2"], spaces["discrete2"], {"0": "a", "1": "b"})
    with pytest.raises(InvalidInput):
        is_homeomorphism_onto_image(g)


def test_injective_continuous_map_need_not_be_embedding(spaces):
    d2 = spaces["discrete2"]
    c2 = spaces["chain2"]
    f = SpaceMap(d2, c2, {"a": "0", "b": "1"})
    assert is_continuous(f) and f.is_injective()
    assert not is_homeomorphism_onto_image(f)


@pytest.mark.parametrize("p", corpus(6), ids=lambda p: p.name)
def test_downsets_form_closed_set_family(p):
    ds = set(p.downsets())
    assert 0 in ds and p.full in ds
    assert all(a | b in ds and a & b in ds for a in ds for b in ds)
    brute = {m for m in range(p.full + 1) if is_closed(PointSet(p, m))}
    assert ds == brute


@pytest.mark.parametrize("p", corpus(4), ids=lambda p: p.name)
def test_t0_equivalence(p):
    closures = [p.below[i] for i in range(p.n)]
    assert p.is_t0() and len(set(closures)) == p.n


@given(poset_and_subset())
def test_closure_is_a_closure_operator(data):
    p, mask = data
    s = PointSet(p, mask)
    c = closure(s)
    assert s <= c and closure(c) == c and is_closed(c)
    for sub in range(mask + 1):
        if not sub & ~mask:
            assert closure(PointSet(p, sub)) <= c


@given(poset_and_subset())
def test_open_hull_and_complements(data):
    p, mask = data
    s = PointSet(p, mask)
    assert is_open(open_hull(s)) and s <= open_hull(s)
    assert is_closed(s) == is_open(p.whole() - s)


@given(poset_and_subset())
def test_density_definitions_agree(data):
    p, mask = data
    s = PointSet(p, mask)
    assert is_dense(s) == is_dense_by_opens(s)


def _all_maps(src, tgt):
    for combo in itertools.product(tgt.elements, repeat=src.n):
        yield SpaceMap(src, tgt, dict(zip(src.elements, combo)))


SMALL = corpus(3)


@pytest.mark.parametrize("src", SMALL, ids=lambda p: p.name)
def test_continuity_order_vs_preimage_exhaustive(src):
    for tgt in SMALL:
        for f in _all_maps(src, tgt):
            assert is_continuous(f, "order") == is_continuous(f, "preimage")


@given(posets(max_n=5), posets(max_n=5))
def test_continuity_order_vs_preimage_random(src, tgt):
    import random
    rng = random.Random(src.n * 31 + tgt.n)
    for _ in range(20):
        f = SpaceMap(src, tgt, {x: rng.choice(tgt.elements) for x in src.elements})
        assert is_continuous(f, "order") == is_continuous(f, "preimage")


@given(posets(max_n=4), posets(max_n=4))
def test_product_topology_is_alexandrov(x1, x2):
    p = product(x1, x2)
    t = product_topology(FiniteTopology.alexandrov(x1), FiniteTopology.alexandrov(x2))
    # product_topology indexes (a, b) as a * n2 + b, matching pair_index order
    reindex = [p.pair_index[(a, b)] for a in x1.elements for b in x2.elements]
    opens = set()
    for u in t.opens:
        m = 0
        for k, i in enumerate(reindex):
            if u >> k & 1:
                m |= 1 << i
        opens.add(m)
    assert opens == set(p.upsets())
    pr1, pr2 = projections(p)
    assert is_continuous(pr1) and is_continuous(pr2)


@given(posets(max_n=5))
def test_order_pairs_round_trip(p):
    q = FinitePoset(p.elements, p.order_pairs())
    assert p == q and hash(p) == hash(q)
    r = FinitePoset.from_relations(p.elements, p.covers())
    assert r == p


@given(posets(max_n=4), posets(max_n=4))
def test_embedding_base_and_all_opens_agree(src, tgt):
    import random
    from finitop.poset import is_order_embedding
    rng = random.Random(src.n * 7 + tgt.n)
    for _ in range(15):
        f = SpaceMap(src, tgt, {x: rng.choice(tgt.elements) for x in src.elements})
        if is_continuous(f):
            base = is_homeomorphism_onto_image(f, "base")
            assert base == is_homeomorphism_onto_image(f, "all")
            assert base == (f.is_injective() and is_order_embedding(f))
