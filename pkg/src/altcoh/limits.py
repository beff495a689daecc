"""Resource limits shared by the enumeration-heavy routines.

Limits live in a context variable so that concurrent callers can run with
different caps without stepping on each other.
"""

from __future__ import annotations

import os
import time
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from typing import Iterator, Optional

DEFAULT_ENUMERATION_CAP = 2**21
DEFAULT_BACKTRACK_NODES = 5_000_000
ENV_ENUMERATION_CAP = "ALTCOH_ENUMERATION_CAP"


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed the configured caps."""


@dataclass(frozen=True)
class Limits:
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    backtrack_nodes: int = DEFAULT_BACKTRACK_NODES
    deadline: Optional[float] = None  # time.monotonic() value


def _initial() -> Limits:
    raw = os.environ.get(ENV_ENUMERATION_CAP)
    if raw:
        return Limits(enumeration_cap=int(raw))
    return Limits()


_current: ContextVar[Limits] = ContextVar("altcoh_limits", default=_initial())


def current() -> Limits:
    return _current.get()


@contextmanager
def limits(
    enumeration_cap: Optional[int] = None,
    timeout: Optional[float] = None,
    backtrack_nodes: Optional[int] = None,
) -> Iterator[Limits]:
    """Temporarily override the active limits.

    ``timeout`` is in seconds from now; ``None`` keeps whatever deadline is
    already active.
    """
    lim = current()
    if enumeration_cap is not None:
        if enumeration_cap < 1:
            raise ValueError("enumeration cap must be positive")
        lim = replace(lim, enumeration_cap=enumeration_cap)
    if backtrack_nodes is not None:
        lim = replace(lim, backtrack_nodes=backtrack_nodes)
    if timeout is not None:
        lim = replace(lim, deadline=time.monotonic() + timeout)
    token = _current.set(lim)
    try:
        yield lim
    finally:
        _current.reset(token)


def check_deadline() -> None:
    deadline = current().deadline
    if deadline is not None and time.monotonic() > deadline:
        raise ResourceLimitError("resource timeout exceeded")


def check_enumeration(size: int, what: str = "enumeration") -> None:
    cap = current().enumeration_cap
    if size > cap:
        raise ResourceLimitError(f"{what} of size {size} exceeds enumeration cap {cap}")
