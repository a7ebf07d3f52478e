"""Size budgets shared by the library and the CLI.

``TILTFACTOR_BUDGET`` overrides the tensor-product budget (weight-pair
operations, estimated as the product of the factor dimensions).
"""
from __future__ import annotations

import contextlib
import contextvars
import os
from dataclasses import dataclass, replace

DEFAULT_ORBIT_BUDGET = 10 ** 6
DEFAULT_TENSOR_BUDGET = 10 ** 8


@dataclass(frozen=True)
class Limits:
    orbit: int = DEFAULT_ORBIT_BUDGET
    tensor: int = DEFAULT_TENSOR_BUDGET


def _from_env() -> Limits:
    raw = os.environ.get("TILTFACTOR_BUDGET")
    if not raw:
        return Limits()
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"TILTFACTOR_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"TILTFACTOR_BUDGET must be positive, got {value}")
    return Limits(tensor=value)


_current: contextvars.ContextVar[Limits | None] = contextvars.ContextVar("tiltfactor_limits", default=None)


def limits() -> Limits:
    cur = _current.get()
    return cur if cur is not None else _from_env()


@contextlib.contextmanager
def budget(orbit: int | None = None, tensor: int | None = None):
    """Temporarily override budgets in the current context."""
    new = limits()
    if orbit is not None:
        new = replace(new, orbit=orbit)
    if tensor is not None:
        new = replace(new, tensor=tensor)
    token = _current.set(new)
    try:
        yield new
    finally:
        _current.reset(token)
