"""The compiled and pure-Python kernels must agree call for call."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import posets
from finitop import _kernels_py as py
from finitop import kernels
from finitop.corpus import all_posets
from finitop.poset import product
from finitop.retraction import _product_perms, mined_configs

pytestmark = pytest.mark.skipif(not kernels.COMPILED_AVAILABLE, reason="compiled kernels not built")


def _both(name, *args):
    with kernels.using_backend("python"):
        a = getattr(kernels, name)(*args)
    with kernels.using_backend("cython"):
        b = getattr(kernels, name)(*args)
    return a, b


def _norm(x):
    return None if x is None else sorted(x) if isinstance(x, list) else x


@given(posets(max_n=7))
def test_downsets_and_limit_masks_agree(p):
    a, b = _both("enumerate_downsets", list(p.linear_extension), list(p.below), 1 << 20)
    assert sorted(a) == sorted(b)
    a, b = _both("limit_masks", p.n, list(p.above))
    assert a == b
    a, b = _both("maximal_masks", a)
    assert sorted(a) == sorted(b)


@given(posets(max_n=6), st.integers(0, 2**32))
def test_set_kernels_agree(p, seed):
    rng = random.Random(seed)
    mask = rng.randrange(p.full + 1)
    for name, args in [
        ("down_closure", (mask, list(p.below))),
        ("common_upper_bounds", (mask, list(p.above), p.full)),
        ("has_decomposition", (p.below[rng.randrange(p.n)], list(p.downsets()))),
    ]:
        a, b = _both(name, *args)
        assert a == b, name
    images = [rng.randrange(p.n) for _ in range(p.n)]
    for name, args in [
        ("preimage", (mask, images)),
        ("image", (mask, images)),
        ("is_monotone", (list(p.below), images, list(p.below))),
    ]:
        a, b = _both(name, *args)
        assert a == b, name


@given(st.lists(st.integers(0, 255), max_size=12))
def test_family_witness_agree(masks):
    a, b = _both("family_witness", masks, 255)
    assert (a is None) == (b is None)
    for fam in (a, b):
        if fam is not None:
            inter = 255
            for i in fam:
                inter &= masks[i]
            assert inter == 0


def test_family_witness_none_when_all_meet():
    assert py.family_witness([3, 1, 7], 7) is None
    assert py.family_witness([1, 2], 3) == (0, 1)


@settings(max_examples=30)
@given(posets(max_n=4))
def test_extension_pairs_agree(p):
    ds = sorted(p.downsets())
    up = sorted(range(p.n), key=lambda i: bin(p.above[i]).count("1"))
    a, b = _both("extension_pairs", list(p.below), list(p.above), ds, up)
    assert sorted(a) == sorted(b)


def test_scan_and_canonical_key_agree():
    for x1 in all_posets(2):
        for x2 in all_posets(2):
            prod = product(x1, x2)
            perms = _product_perms(x1, x2, prod)
            for mode in (0, 1, 2):
                a, b = _both("scan_extensions", list(prod.below), list(prod.above), prod.n,
                             list(prod.below), [prod.full], mode)
                assert sorted(a) == sorted(b)
                for nb, psi in a:
                    ka, kb = _both("canonical_config_key", nb, psi, prod.n, perms)
                    assert ka == kb


def test_miner_agrees_across_backends():
    with kernels.using_backend("python"):
        a = [m.key for m in mined_configs(1, 3, "fail")]
    with kernels.using_backend("cython"):
        b = [m.key for m in mined_configs(1, 3, "fail")]
    assert a == b and len(a) > 0


def test_wide_masks_fall_back_to_python():
    below = [1 << i for i in range(70)]
    assert kernels.down_closure((1 << 69) | 1, below) == (1 << 69) | 1


def test_backend_switching():
    before = kernels.backend()
    with kernels.using_backend("python"):
        assert kernels.backend() == "python"
    assert kernels.backend() == before
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
