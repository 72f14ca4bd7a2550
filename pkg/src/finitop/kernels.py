"""Backend selection for the bitmask kernels.

The compiled extension ``finitop._kernels`` is used when it imports and the
masks involved fit in 64 bits; otherwise calls fall through to the
pure-Python implementation in ``finitop._kernels_py``. Setting the
environment variable ``FINITOP_PURE_PYTHON=1`` before import disables the
extension entirely.
"""

import contextlib
import os

from . import _kernels_py as _py

try:
    if os.environ.get("FINITOP_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("disabled by FINITOP_PURE_PYTHON")
    from . import _kernels as _c
except ImportError:
    _c = None

COMPILED_AVAILABLE = _c is not None
_active = _c


def backend():
    """Name of the backend currently in use: ``"cython"`` or ``"python"``."""
    return "cython" if _active is not None else "python"


def set_backend(name):
    global _active
    if name == "python":
        _active = None
    elif name == "cython":
        if _c is None:
            raise RuntimeError("compiled kernels are not available")
        _active = _c
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextlib.contextmanager
def using_backend(name):
    global _active
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        _active = previous


def _wide(*ints):
    return any(x.bit_length() > 64 for x in ints)


def down_closure(mask, below):
    if _active is None or len(below) > 64:
        return _py.down_closure(mask, below)
    return _active.down_closure(mask, below)


def enumerate_downsets(order, below, limit):
    if _active is None or len(below) > 64:
        return _py.enumerate_downsets(order, below, limit)
    return _active.enumerate_downsets(order, below, limit)


def family_witness(masks, full):
    if _active is None or _wide(full):
        return _py.family_witness(masks, full)
    return _active.family_witness(masks, full)


def has_decomposition(f, closed):
    if _active is None or _wide(f):
        return _py.has_decomposition(f, closed)
    return _active.has_decomposition(f, closed)


def common_upper_bounds(mask, above, full):
    if _active is None or _wide(full):
        return _py.common_upper_bounds(mask, above, full)
    return _active.common_upper_bounds(mask, above, full)


def limit_masks(n, above):
    if _active is None or n > 63:
        return _py.limit_masks(n, above)
    return _active.limit_masks(n, above)


def maximal_masks(masks):
    masks = list(masks)
    if _active is None or _wide(*masks):
        return _py.maximal_masks(masks)
    return _active.maximal_masks(masks)


def is_monotone(below_src, images, below_tgt):
    if _active is None or len(below_src) > 64 or len(below_tgt) > 64:
        return _py.is_monotone(below_src, images, below_tgt)
    return _active.is_monotone(below_src, images, below_tgt)


def preimage(mask, images):
    if _active is None or len(images) > 64 or _wide(mask):
        return _py.preimage(mask, images)
    return _active.preimage(mask, images)


def image(mask, images):
    if _active is None or _wide(mask) or any(t >= 64 for t in images):
        return _py.image(mask, images)
    return _active.image(mask, images)


def extension_pairs(below, above, downsets, up_order):
    if _active is None or len(below) > 63:
        return _py.extension_pairs(below, above, downsets, up_order)
    return _active.extension_pairs(below, above, downsets, up_order)


def scan_extensions(below, above, n_prod, prod_below, rects, mode):
    if _active is None or len(below) > 62:
        return _py.scan_extensions(below, above, n_prod, prod_below, rects, mode)
    return _active.scan_extensions(below, above, n_prod, prod_below, rects, mode)


def canonical_config_key(below, psi_vals, n_prod, prod_perms):
    if _active is None or len(below) > 64:
        return _py.canonical_config_key(below, psi_vals, n_prod, prod_perms)
    return _active.canonical_config_key(below, psi_vals, n_prod, prod_perms)
