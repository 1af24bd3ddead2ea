"""Resource caps shared by every module.

Caps live in a context variable so the command line (or a test) can tighten or
relax them for a block of work without threading arguments through every call::

    with use_limits(max_group_order=500):
        G = construct_named({"symmetric": 6})   # raises GroupTooLarge
"""

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    max_group_order: int = 2000
    max_subgroups: int = 10**5
    max_enumeration: int = 10**7


_LIMITS: ContextVar[Limits] = ContextVar("pacmeasure_limits", default=Limits())


def get_limits() -> Limits:
    return _LIMITS.get()


@contextmanager
def use_limits(**overrides):
    overrides = {k: v for k, v in overrides.items() if v is not None}
    token = _LIMITS.set(replace(_LIMITS.get(), **overrides))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)
