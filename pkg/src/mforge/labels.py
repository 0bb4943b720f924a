"""Label helpers: primed copies and ordered disjoint unions."""
from __future__ import annotations

import re
from collections.abc import Iterable, Sequence

from .errors import PreconditionError


def prime(label: str) -> str:
    return label + "'"


def prime_map(labels: Iterable[str], avoid: Iterable[str] = ()) -> dict[str, str]:
    """Map each label to its primed copy, refusing collisions with ``avoid``."""
    labels = list(labels)
    taken = set(avoid) | set(labels)
    mapping = {}
    for lab in labels:
        new = prime(lab)
        if new in taken:
            raise PreconditionError(f"primed label {new!r} collides with an existing label")
        mapping[lab] = new
    return mapping


def fresh_map(labels: Iterable[str], avoid: Iterable[str]) -> dict[str, str]:
    """Like ``prime_map`` but keeps appending primes until the name is free."""
    taken = set(avoid)
    mapping = {}
    for lab in labels:
        new = prime(lab)
        while new in taken:
            new = prime(new)
        taken.add(new)
        mapping[lab] = new
    return mapping


def ordered_union(*parts: Sequence[str]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for part in parts:
        for lab in part:
            seen.setdefault(lab, None)
    return tuple(seen)


def check_unique(labels: Sequence[str]) -> None:
    if len(set(labels)) != len(labels):
        dupes = sorted({x for x in labels if list(labels).count(x) > 1})
        raise PreconditionError(f"duplicate labels: {dupes}")
    for lab in labels:
        if not lab or any(ch.isspace() for ch in lab) or any(ch in lab for ch in "{},"):
            raise PreconditionError(f"invalid label {lab!r}")


def parse_label_list(text: str) -> tuple[str, ...]:
    """Parse ``a,b,c`` (commas and/or spaces) into a tuple of labels."""
    return tuple(tok for tok in text.replace(",", " ").split() if tok)


def label_key(label: str) -> tuple:
    """Natural sort key: ``e2`` before ``e10``."""
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok) for tok in re.findall(r"\d+|\D+", label))


def sorted_labels(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=label_key)
