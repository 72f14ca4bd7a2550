import pytest
from hypothesis import given

from conftest import corpus, posets
from finitop.errors import CapacityError, InvalidInput
from finitop.capacity import max_size_override
from finitop.hyperspace import build_hyperspace, embed_point, embedding_map, hit_set
from finitop.poset import FinitePoset, is_continuous, is_homeomorphism_onto_image
from finitop.topology import FiniteTopology


def _sets(h):
    return [set(s.members) for s in h]


def test_examples(spaces):
    h = build_hyperspace(spaces["sierpinski"])
    assert _sets(h) == [set(), {"0"}, {"0", "1"}]
    assert h.as_poset.leq("{}", "{0}") and h.as_poset.leq("{0}", "{0,1}")
    h2 = build_hyperspace(spaces["discrete2"])
    assert len(h2) == 4 and h2.as_poset.leq("{a}", "{a,b}") and not h2.as_poset.leq("{a}", "{b}")
    assert _sets(build_hyperspace(spaces["empty"])) == [set()]


def test_hit_set_examples(spaces):
    s = spaces["sierpinski"]
    h = build_hyperspace(s)
    assert set(hit_set(h, s.subset(["1"])).members) == {"{0,1}"}
    assert set(hit_set(h, s.whole()).members) == {"{0}", "{0,1}"}
    assert not hit_set(h, s.empty())
    with pytest.raises(InvalidInput):
        hit_set(h, s.subset(["0"]))


def test_embed_point_examples(spaces):
    for name, x, expect in [("sierpinski", "1", {"0", "1"}), ("discrete2", "a", {"a"}),
                            ("V3", "m", {"p", "m"})]:
        h = build_hyperspace(spaces[name])
        assert set(embed_point(h, x).members) == expect
    with pytest.raises(InvalidInput):
        embed_point(build_hyperspace(spaces["V3"]), "q")


def test_capacity_guard():
    big = FinitePoset.discrete([f"x{i}" for i in range(8)])
    with max_size_override(100):
        with pytest.raises(CapacityError):
            build_hyperspace(big)


@pytest.mark.parametrize("p", corpus(5), ids=lambda p: p.name)
def test_lower_vietoris_is_inclusion_topology(p):
    h = build_hyperspace(p)
    assert h.lower_vietoris() == FiniteTopology.alexandrov(h.as_poset)
    e = embedding_map(h)
    assert e.is_injective() and is_continuous(e) and is_homeomorphism_onto_image(e)


@given(posets(max_n=5))
def test_family_closed_under_lattice_operations(p):
    h = build_hyperspace(p)
    ms = set(h.members)
    assert 0 in ms and p.full in ms
    assert all(a | b in ms and a & b in ms for a in ms for b in ms)


@given(posets(max_n=5))
def test_specialization_is_inclusion(p):
    h = build_hyperspace(p)
    hp = h.as_poset
    for f in h:
        for g in h:
            assert hp.leq(h.point(f), h.point(g)) == (f <= g)


@given(posets(max_n=5))
def test_member_order_is_cardinality_then_lexicographic(p):
    from finitop.poset import mask_key
    h = build_hyperspace(p)
    assert list(h.members) == sorted(h.members, key=mask_key)
