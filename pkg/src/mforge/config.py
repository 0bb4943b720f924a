"""Enumeration guards.

``MFORGE_GUARD`` in the environment overrides both guards.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import GuardExceeded


@dataclass(frozen=True)
class Guard:
    core: int = 22
    pair: int = 12

    @classmethod
    def from_env(cls) -> "Guard":
        raw = os.environ.get("MFORGE_GUARD")
        if not raw:
            return cls()
        limit = int(raw)
        return cls(core=limit, pair=limit)


def current_guard() -> Guard:
    return Guard.from_env()


def check_guard(size: int, what: str = "enumeration", pair: bool = False) -> None:
    guard = current_guard()
    limit = guard.pair if pair else guard.core
    if size > limit:
        raise GuardExceeded(f"{what} on {size} elements exceeds guard {limit}")
