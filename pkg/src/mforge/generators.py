"""Seeded random instance builders for tests and experiment scripts."""
from __future__ import annotations

import random
from collections.abc import Sequence

from .fields import GF, Field
from .graphs import Graph, make_graph
from .matroid import ExplicitMatroid, Matroid, graphic, linear, materialize, uniform
from .vspace import VSpace, make_space


def labels(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(1, n + 1)]


def random_space(rng: random.Random, field: Field, rows: int, columns: Sequence[str],
                 density: float = 0.7) -> VSpace:
    """Span of ``rows`` random vectors; entries are zero with probability 1 − density."""
    def entry():
        if rng.random() > density:
            return 0
        if field.is_rational:
            return rng.randint(-3, 3)
        return rng.randrange(field.modulus)
    return make_space(field, [[entry() for _ in columns] for _ in range(rows)], list(columns))


def random_graph(rng: random.Random, n_vertices: int, edge_labels: Sequence[str]) -> Graph:
    verts = labels("v", n_vertices)
    edges = [(lab, rng.choice(verts), rng.choice(verts)) for lab in edge_labels]
    return make_graph(verts, edges)


def random_matroid(rng: random.Random, ground: Sequence[str]) -> ExplicitMatroid:
    """An enumerated matroid drawn from linear, graphic and uniform families."""
    ground = list(ground)
    n = len(ground)
    kind = rng.random()
    if kind < 0.65:
        field = GF(rng.choice([2, 3, 5]))
        space = random_space(rng, field, rng.randint(0, n), ground, density=rng.uniform(0.3, 0.9))
        m: Matroid = linear(space)
    elif kind < 0.9:
        m = graphic(random_graph(rng, rng.randint(1, max(2, n)), ground))
    else:
        m = uniform(ground, rng.randint(0, n))
    return materialize(m)


def random_split(rng: random.Random, n: int, parts: int = 2, min_size: int = 1) -> list[list[str]]:
    """Disjoint label groups named s*, p*, q* (for two or three parts)."""
    prefixes = ["s", "p", "q"] if parts == 3 else ["s", "q"]
    sizes = [min_size] * parts
    for _ in range(n - min_size * parts):
        sizes[rng.randrange(parts)] += 1
    return [labels(pre, k) for pre, k in zip(prefixes, sizes)]
