import pytest
from hypothesis import given
from hypothesis import strategies as st

from finitop.cofinite import (
    COFULL,
    EMPTY,
    Kind,
    SymbolicSet,
    cf_closure,
    cf_family_intersection,
    cf_is_limit_set,
    cf_is_prime,
    cf_max_limit_sets,
    cf_prime_split,
)
from finitop.errors import InvalidInput
from finitop.limits import max_limit_sets
from finitop.cofinite import COFINITE

points = st.lists(st.integers(0, 12), max_size=6)
symbolic = st.builds(SymbolicSet, st.sampled_from([Kind.FINITE, Kind.COFINITE]), points.map(tuple))
BOUNDS = (10, 50)


def test_descriptors_are_canonical():
    assert SymbolicSet.finite([3, 1, 3]).points == (1, 3)
    with pytest.raises(InvalidInput):
        SymbolicSet.finite([-1])


def test_closure_examples():
    assert cf_closure(SymbolicSet.finite([1, 2])) == SymbolicSet.finite([1, 2])
    assert cf_closure(SymbolicSet.cofinite([3])) == COFULL
    assert cf_closure(EMPTY) == EMPTY


def test_prime_examples():
    assert cf_is_prime(SymbolicSet.finite([5]))
    assert not cf_is_prime(SymbolicSet.finite([1, 2]))
    assert cf_is_prime(COFULL)
    with pytest.raises(InvalidInput):
        cf_is_prime(EMPTY)
    with pytest.raises(InvalidInput):
        cf_is_prime(SymbolicSet.cofinite([1]))


@given(points.filter(lambda p: len(set(p)) >= 2))
def test_finite_splits_are_genuine(pts):
    s = SymbolicSet.finite(pts)
    a, b = cf_prime_split(s)
    assert a.union(b) == s and a != s and b != s and a.is_closed() and b.is_closed()


def test_limit_examples():
    assert cf_is_limit_set(SymbolicSet.finite([7]))
    assert cf_is_limit_set(SymbolicSet.finite([1, 2, 3]))
    assert cf_is_limit_set(COFULL)
    assert cf_max_limit_sets() == [COFULL]
    assert list(max_limit_sets(COFINITE)) == [COFULL]
    with pytest.raises(InvalidInput):
        cf_is_limit_set(EMPTY)


@given(st.lists(points, min_size=1, max_size=4))
def test_finite_families_of_nonempty_opens_meet(excluded):
    opens = [SymbolicSet.cofinite(e) for e in excluded]
    inter = cf_family_intersection(opens)
    assert inter.is_open() and not inter.is_finite


@given(symbolic, symbolic)
def test_set_algebra_matches_truncation(a, b):
    for n in BOUNDS:
        ta, tb = a.truncate(n), b.truncate(n)
        assert (a | b).truncate(n) == ta | tb
        assert (a & b).truncate(n) == ta & tb
        assert a.complement().truncate(n) == frozenset(range(n + 1)) - ta
        assert all((k in a) == (k in ta) for k in range(n + 1))


@given(symbolic, symbolic)
def test_subset_matches_truncation_when_stable(a, b):
    # Inclusion is decided on {0..50}: every listed point is at most 12.
    assert a.issubset(b) == (a.truncate(50) <= b.truncate(50))


@given(points)
def test_closure_of_finite_sets_matches_truncation(pts):
    s = SymbolicSet.finite(pts)
    for n in BOUNDS:
        assert cf_closure(s).truncate(n) == s.truncate(n)


@given(symbolic)
def test_open_closed_classification(s):
    assert s.is_closed() == (s.is_finite or s.is_whole)
    assert s.is_open() == s.complement().is_closed()


def test_str_forms():
    assert str(COFULL) == "COFULL"
    assert str(SymbolicSet.finite([2, 1])) == "{1,2}"
    assert str(SymbolicSet.cofinite([4])) == "N\\{4}"
