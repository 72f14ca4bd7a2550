import itertools

import pytest

from finitop.cstar import (
    BlockAlgebra,
    BlockIdeal,
    IdealLattice,
    delta,
    hull_of,
    ideal_from_hull,
    ideals,
    is_primal,
    is_primal_algebraic,
    kernel_of,
    min_primal,
    min_primal_algebraic,
    phi,
    prim_space,
    prime_space,
    proper_ideals,
    psi,
    verify_hull_identities,
    verify_map_facts,
    verify_theorem_min,
    whole_algebra,
    zero_ideal,
)
from finitop.errors import CapacityError, InvalidInput
from finitop.limits import max_limit_sets, primal_check
from finitop.poset import FinitePoset, is_homeomorphism

A23 = BlockAlgebra.from_sizes([2, 3], name="A")
B2 = BlockAlgebra.from_sizes([2], prefix="c", name="B")
B22 = BlockAlgebra.from_sizes([2, 2], prefix="c", name="B")

ALGEBRAS = [
    BlockAlgebra.from_sizes(s, name="A") for s in [(1,), (2, 3), (1, 1, 1), (2, 2, 2)]
]


def h(a, *blocks):
    return ideal_from_hull(a, blocks)


def test_algebra_validation():
    with pytest.raises(InvalidInput):
        BlockAlgebra(())
    with pytest.raises(InvalidInput):
        BlockAlgebra((("b", 1), ("b", 2)))
    with pytest.raises(InvalidInput):
        BlockAlgebra((("b", 0),))
    with pytest.raises(InvalidInput):
        BlockIdeal(A23, frozenset({"zz"}))


def test_tensor_blocks():
    t = A23.tensor(B22)
    assert t.blocks == (("(b1,c1)", 4), ("(b1,c2)", 4), ("(b2,c1)", 6), ("(b2,c2)", 6))
    assert t.dimension == sum(n * n for _, n in t.blocks)


def test_spaces():
    assert prime_space(A23) == prim_space(A23) == FinitePoset.discrete(["b1", "b2"])
    assert prime_space(BlockAlgebra.from_sizes([5])).n == 1
    assert prime_space(BlockAlgebra.from_sizes([1, 1, 1])).n == 3


def test_phi_examples():
    t = A23.tensor(B2)
    assert phi(h(A23, "b1"), h(B2, "c1"), t).hull == {"(b1,c1)"}
    assert phi(zero_ideal(A23), zero_ideal(B2), t).is_zero
    assert phi(whole_algebra(A23), h(B2, "c1"), t).is_whole


def test_delta_examples():
    t = A23.tensor(B2)
    for i1, i2 in [(h(A23, "b1"), h(B2, "c1")), (zero_ideal(A23), zero_ideal(B2)),
                   (whole_algebra(A23), h(B2, "c1"))]:
        assert delta(i1, i2, t) == phi(i1, i2, t)
    assert delta(h(A23, "b1", "b2"), h(B2, "c1"), t).hull == {"(b1,c1)", "(b2,c1)"}
    d = delta(h(A23, "b1"), zero_ideal(B2), t)
    assert d.hull == {"(b1,c1)"}


def test_delta_zero_second_factor_is_first_tensor_whole():
    t = A23.tensor(B22)
    i1 = h(A23, "b2")
    assert delta(i1, zero_ideal(B22), t).hull == {"(b2,c1)", "(b2,c2)"}


def test_psi_examples():
    t = A23.tensor(B22)
    j1, j2 = psi(ideal_from_hull(t, ["(b1,c1)", "(b2,c1)"]))
    assert j1.hull == {"b1", "b2"} and j2.hull == {"c1"}
    z1, z2 = psi(zero_ideal(t))
    assert z1.is_zero and z2.is_zero
    with pytest.raises(InvalidInput):
        psi(zero_ideal(A23))


def test_psi_by_literal_membership():
    """``I_{A1}`` recomputed from ``a ⊗ A2 ⊂ I`` on block-supported elements."""
    t = A23.tensor(B22)
    for i in ideals(t):
        j1, _ = psi(i)
        for b in A23.names:
            # the element supported on block b alone, tensored with every block of A2
            inside = all(f"({b},{c})" in i.support for c in B22.names)
            assert (b in j1.support) == inside


def test_ideal_lattice_hull_map_is_order_reversing_homeomorphism():
    for a in ALGEBRAS:
        lat = IdealLattice(a)
        hm = lat.hull_map()
        assert is_homeomorphism(hm)
        for i in lat.ideals:
            for j in lat.ideals:
                assert i.contains(j) == (hull_of(i) <= hull_of(j))
        for i in lat.ideals:
            assert kernel_of(a, hull_of(i)) == i


def test_min_primal_examples():
    assert [i.hull for i in min_primal(A23)] == [{"b1"}, {"b2"}]
    simple = BlockAlgebra.from_sizes([5])
    assert [i.is_zero for i in min_primal(simple)] == [True]


def test_min_primal_hulls_are_max_limit_sets():
    for a in ALGEBRAS:
        hulls = [hull_of(i).mask for i in min_primal(a)]
        assert hulls == [m.mask for m in max_limit_sets(prime_space(a))]
        assert sorted(map(str, min_primal(a))) == sorted(map(str, min_primal_algebraic(a)))


def test_primal_check_examples():
    assert primal_check(hull_of(h(A23, "b1")))
    assert not primal_check(hull_of(h(A23, "b1", "b2")))
    assert primal_check(hull_of(h(BlockAlgebra.from_sizes([2]), "b1")))
    with pytest.raises(InvalidInput):
        is_primal(whole_algebra(A23))


@pytest.mark.parametrize("a", [BlockAlgebra.from_sizes([1] * k) for k in (1, 2, 3)],
                         ids=["1", "2", "3"])
def test_primal_topological_matches_algebraic(a):
    for i in proper_ideals(a):
        assert is_primal(i) == is_primal_algebraic(i)


@pytest.mark.parametrize("k1,k2", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_phi_equals_delta_everywhere(k1, k2):
    a1 = BlockAlgebra.from_sizes([2] * k1, name="A")
    a2 = BlockAlgebra.from_sizes([3] * k2, prefix="c", name="B")
    t = a1.tensor(a2)
    for i1, i2 in itertools.product(ideals(a1), ideals(a2)):
        assert phi(i1, i2, t) == delta(i1, i2, t)


@pytest.mark.parametrize("sizes", [([2, 3], [2]), ([1], [1]), ([2, 2, 2], [3, 3])])
def test_verify_hull_identities_examples(sizes):
    a1 = BlockAlgebra.from_sizes(sizes[0], name="A")
    a2 = BlockAlgebra.from_sizes(sizes[1], prefix="c", name="B")
    r = verify_hull_identities(a1, a2)
    assert r.ok, r.lines()
    assert len(r.checks) == 2 * 2 ** len(a1.blocks) * 2 ** len(a2.blocks)


def test_four_blocks_allowed_five_refused():
    a4 = BlockAlgebra.from_sizes([1] * 4)
    assert verify_hull_identities(a4, BlockAlgebra.from_sizes([1])).ok
    with pytest.raises(CapacityError):
        verify_hull_identities(BlockAlgebra.from_sizes([1] * 5), a4)


def test_verify_theorem_min_example():
    r = verify_theorem_min(A23, B2)
    assert r.ok, r.lines()
    assert len(r.theta) == 2
    assert sorted(v.display() for v in r.theta.assignment.values()) == ["{(b1,c1)}", "{(b2,c1)}"]


def test_verify_map_facts_example():
    r = verify_map_facts(A23, B22)
    assert r.ok, r.lines()


def test_report_lines_mark_failures():
    from finitop.cstar import Report
    r = Report("demo")
    r.add("good", True)
    r.add("bad", False, "why")
    assert not r.ok and r.lines() == ["demo: 1/2 checks passed", "FAIL  bad: why", "FAIL"]
