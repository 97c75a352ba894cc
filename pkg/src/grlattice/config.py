"""Enumeration caps shared by every exhaustive search in the package."""

from __future__ import annotations

import contextlib
import contextvars
import os
from dataclasses import dataclass, replace


class CapExceeded(RuntimeError):
    """An exhaustive search would exceed its configured element cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} elements exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class Caps:
    enum_cap: int = 2**20  # vectors / matrix tuples / subspace tuples
    hom_cap: int = 2**16  # elements of a hom space enumerated explicitly


def _from_env() -> Caps:
    caps = Caps()
    if "GRLATTICE_ENUM_CAP" in os.environ:
        caps = replace(caps, enum_cap=int(os.environ["GRLATTICE_ENUM_CAP"]))
    if "GRLATTICE_HOM_CAP" in os.environ:
        caps = replace(caps, hom_cap=int(os.environ["GRLATTICE_HOM_CAP"]))
    return caps


_current: contextvars.ContextVar[Caps] = contextvars.ContextVar("grlattice_caps")


def current_caps() -> Caps:
    try:
        return _current.get()
    except LookupError:
        caps = _from_env()
        _current.set(caps)
        return caps


@contextlib.contextmanager
def using_caps(enum_cap: int | None = None, hom_cap: int | None = None):
    """Temporarily override caps, e.g. ``with using_caps(enum_cap=64): ...``."""
    caps = current_caps()
    if enum_cap is not None:
        caps = replace(caps, enum_cap=enum_cap)
    if hom_cap is not None:
        caps = replace(caps, hom_cap=hom_cap)
    token = _current.set(caps)
    try:
        yield caps
    finally:
        _current.reset(token)


def check_cap(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise CapExceeded(what, size, cap)
