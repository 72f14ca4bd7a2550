import itertools

import pytest
from hypothesis import given

from conftest import corpus, poset_and_subset, posets
from finitop.corpus import discrete
from finitop.errors import InvalidInput
from finitop.limits import all_limit_masks, is_limit_set, limit_witness, max_limit_sets, primal_check
from finitop.poset import PointSet, is_closed


def _displays(fam):
    return [m.display() for m in fam]


def test_examples(spaces):
    v3 = spaces["V3"]
    assert not is_limit_set(v3.subset(["m", "z"]))
    assert is_limit_set(v3.subset(["p", "m"]))
    assert all(is_limit_set(v3.subset([x])) for x in v3.elements)
    assert _displays(max_limit_sets(v3)) == ["{p,m}", "{p,z}"]
    assert _displays(max_limit_sets(discrete(3))) == ["{y0}", "{y1}", "{y2}"]
    assert _displays(max_limit_sets(spaces["sierpinski"])) == ["{0,1}"]


def test_witness_for_non_limit_set(spaces):
    v3 = spaces["V3"]
    fam = limit_witness(v3.subset(["m", "z"]))
    inter = v3.full
    for u in fam:
        assert u.mask & v3.subset(["m", "z"]).mask
        inter &= u.mask
    assert inter == 0


def test_empty_set_rejected(spaces):
    with pytest.raises(InvalidInput):
        is_limit_set(spaces["V3"].empty())


def test_primal_check_examples(spaces):
    d2 = spaces["discrete2"]
    assert primal_check(d2.subset(["a"]))
    assert not primal_check(d2.whole())
    with pytest.raises(InvalidInput):
        primal_check(spaces["V3"].subset(["m"]))


def _literal_all_families(l):
    """Every family of opens meeting ``l``, enumerated subset by subset."""
    space = l.space
    opens = [u for u in space.upsets() if u & l.mask]
    for k in range(1, len(opens) + 1):
        for fam in itertools.combinations(opens, k):
            inter = space.full
            for u in fam:
                inter &= u
            if not inter:
                return False
    return True


@pytest.mark.parametrize("p", corpus(4), ids=lambda p: p.name)
def test_neighbourhood_reduction_by_full_enumeration(p):
    for mask in range(1, p.full + 1):
        l = PointSet(p, mask)
        full = _literal_all_families(l)
        assert full == (limit_witness(l, "neighbourhoods") is None) == (limit_witness(l, "literal") is None)


@pytest.mark.parametrize("p", corpus(6), ids=lambda p: p.name)
def test_fast_matches_literal(p):
    for mask in range(1, p.full + 1):
        l = PointSet(p, mask)
        assert is_limit_set(l) == is_limit_set(l, "literal") == is_limit_set(l, "neighbourhoods")


@pytest.mark.parametrize("p", corpus(6), ids=lambda p: p.name)
def test_ml_fast_matches_brute(p):
    fast, brute = max_limit_sets(p), max_limit_sets(p, "brute")
    assert [m.mask for m in fast] == [m.mask for m in brute]
    members = [m.mask for m in fast]
    for m in fast:
        assert is_closed(m) and is_limit_set(m)
    for l in all_limit_masks(p):
        assert any(not l & ~m for m in members)


@given(poset_and_subset(nonempty=True))
def test_limit_sets_are_down_closed_in_their_upper_bounds(data):
    p, mask = data
    l = PointSet(p, mask)
    from finitop.poset import closure
    # closure of a limit set is again a limit set
    if is_limit_set(l):
        assert is_limit_set(closure(l))


@given(posets(max_n=6))
def test_ml_members_pairwise_incomparable(p):
    ms = [m.mask for m in max_limit_sets(p)]
    assert all(a == b or a & ~b for a in ms for b in ms)
    assert len(ms) == len(p.maximal())
