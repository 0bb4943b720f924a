"""Exact composition and decomposition of vector spaces, graphs and matroids."""
from __future__ import annotations

from .errors import GuardExceeded, InvariantBreach, MforgeError, ParseError, PreconditionError
from .fields import GF, QQ, Field
from .graphs import Graph, incidence_space, make_graph
from .link import LinkInstance, conditional_minimize, general_minimize, link
from .matroid import (
    Matroid,
    dual,
    enumerate_bases,
    explicit,
    free,
    graphic,
    linear,
    matroid_equal,
    uniform,
    zero,
)
from .union import max_common_independent, maximally_distant_bases, union, wedge
from .vspace import VSpace, make_space

__all__ = [
    "GF",
    "QQ",
    "Field",
    "Graph",
    "GuardExceeded",
    "InvariantBreach",
    "LinkInstance",
    "Matroid",
    "MforgeError",
    "ParseError",
    "PreconditionError",
    "VSpace",
    "conditional_minimize",
    "dual",
    "enumerate_bases",
    "explicit",
    "free",
    "general_minimize",
    "graphic",
    "incidence_space",
    "linear",
    "link",
    "make_graph",
    "make_space",
    "matroid_equal",
    "max_common_independent",
    "maximally_distant_bases",
    "uniform",
    "union",
    "wedge",
    "zero",
]

__version__ = "0.1.0"
