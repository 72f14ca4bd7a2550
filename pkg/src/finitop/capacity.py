"""Size guard for exhaustive enumerations.

The default limit on the number of closed sets any single enumeration may
produce is ``2**16``. It can be overridden with the ``FINITOP_MAX_SIZE``
environment variable or, within a process, with :func:`set_max_size` /
:func:`max_size_override`.
"""

import contextlib
import os

DEFAULT_MAX_SIZE = 1 << 16
ENV_VAR = "FINITOP_MAX_SIZE"

_override = None


def max_size():
    if _override is not None:
        return _override
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
        if value < 1:
            raise ValueError(f"{ENV_VAR} must be positive, got {value}")
        return value
    return DEFAULT_MAX_SIZE


def set_max_size(value):
    global _override
    if value is not None and value < 1:
        raise ValueError("max size must be positive")
    _override = value


@contextlib.contextmanager
def max_size_override(value):
    global _override
    previous = _override
    set_max_size(value)
    try:
        yield
    finally:
        _override = previous
