"""Text formats for matrices, graphs and matroids.

All three are line based; blank lines and ``#`` comments are ignored.  File
references inside a matroid document resolve relative to that document.
"""
from __future__ import annotations

import re
from pathlib import Path

from .completion import completion
from .errors import ParseError, PreconditionError
from .fields import parse_field
from .graphs import Edge, Graph
from .labels import parse_label_list, sorted_labels
from .link import link
from .matroid import (
    Matroid,
    base_masks,
    dual,
    explicit,
    free,
    graphic,
    linear,
    minor,
    reorder,
    uniform,
    zero,
)
from .union import union
from .vspace import VSpace, make_space


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _expect(line: str, keyword: str) -> list[str]:
    parts = line.split()
    if not parts or parts[0] != keyword:
        raise ParseError(f"expected a '{keyword}' line, got {line!r}")
    return parts[1:]


def _wrap(fn, *args):
    """Re-raise construction failures in parsed input as parse errors."""
    try:
        return fn(*args)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc


# matrices


def parse_matrix(text: str) -> VSpace:
    lines = _lines(text)
    if len(lines) < 2:
        raise ParseError("matrix needs a field line and a cols line")
    field_line = lines[0].split(None, 1)
    if field_line[0] != "field" or len(field_line) != 2:
        raise ParseError(f"expected 'field rational' or 'field gf <p>', got {lines[0]!r}")
    field = parse_field(field_line[1])
    columns = _expect(lines[1], "cols")
    rows = [[field.parse(tok) for tok in line.split()] for line in lines[2:]]
    for r in rows:
        if len(r) != len(columns):
            raise ParseError(f"row has {len(r)} entries for {len(columns)} columns")
    return _wrap(make_space, field, rows, columns)


def write_matrix(space: VSpace) -> str:
    lines = [f"field {space.field.tag}", "cols " + " ".join(space.columns)]
    lines += [" ".join(space.field.format(x) for x in row) for row in space.rows]
    return "\n".join(lines) + "\n"


# graphs


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines:
        raise ParseError("graph needs a vertices line")
    vertices = _expect(lines[0], "vertices")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"edge line must be 'label tail head', got {line!r}")
        edges.append(Edge(*parts))
    return _wrap(Graph, tuple(vertices), tuple(edges))


def write_graph(graph: Graph) -> str:
    lines = ["vertices " + " ".join(graph.vertices)]
    lines += [f"{e.label} {e.tail} {e.head}" for e in graph.edges]
    return "\n".join(lines) + "\n"


def parse_vertex_map(text: str) -> dict[str, str]:
    """Lines ``right_vertex left_vertex``."""
    mapping = {}
    for line in _lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"vertex map line must have two ids, got {line!r}")
        if parts[0] in mapping:
            raise ParseError(f"vertex {parts[0]!r} mapped twice")
        mapping[parts[0]] = parts[1]
    return mapping


# matroids

_BASE_RE = re.compile(r"\{([^{}]*)\}")


def _parse_bases(rest: str, ground: list[str]) -> Matroid:
    leftover = _BASE_RE.sub("", rest).strip()
    if leftover:
        raise ParseError(f"unexpected text in base list: {leftover!r}")
    bases = [parse_label_list(m.group(1)) for m in _BASE_RE.finditer(rest)]
    if not bases:
        raise ParseError("base list is empty")
    return explicit(bases, ground)


def parse_matroid(text: str, base_dir: Path | str = ".") -> Matroid:
    lines = _lines(text)
    if len(lines) < 2:
        raise ParseError("matroid needs a ground line and a definition")
    ground = _expect(lines[0], "ground")
    head, _, rest = " ".join(lines[1:]).partition(" ")
    base_dir = Path(base_dir)
    args = rest.split()

    def load(name: str) -> str:
        path = base_dir / name
        try:
            return path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc

    def sub(name: str) -> Matroid:
        return parse_matroid(load(name), (base_dir / name).parent)

    def arity(k: int) -> None:
        if len(args) != k:
            raise ParseError(f"'{head}' takes {k} argument(s), got {len(args)}")

    if head == "bases":
        return _parse_bases(rest, ground)
    if head == "free":
        arity(0)
        m = free(ground)
    elif head == "zero":
        arity(0)
        m = zero(ground)
    elif head == "uniform":
        arity(1)
        if not args[0].isdigit():
            raise ParseError(f"uniform rank must be a nonnegative integer, got {args[0]!r}")
        m = _wrap(uniform, ground, int(args[0]))
    elif head == "linear":
        arity(1)
        m = linear(parse_matrix(load(args[0])))
    elif head == "graphic":
        arity(1)
        m = graphic(parse_graph(load(args[0])))
    elif head == "dual":
        arity(1)
        m = dual(sub(args[0]))
    elif head == "minor":
        arity(3)
        m = _wrap(minor, sub(args[0]), parse_label_list(args[1]), parse_label_list(args[2]))
    elif head in ("union", "link"):
        arity(2)
        op = union if head == "union" else link
        m = _wrap(op, sub(args[0]), sub(args[1]))
    elif head == "completion":
        arity(3)
        m = _wrap(completion, sub(args[0]), parse_label_list(args[1]), parse_label_list(args[2]))
    else:
        raise ParseError(f"unknown matroid form {head!r}")
    if sorted(m.ground) != sorted(ground):
        raise ParseError(f"declared ground {ground} differs from the constructed ground {list(m.ground)}")
    return reorder(m, ground)


def load_matroid(path: Path | str) -> Matroid:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_matroid(text, path.parent)


def write_matroid(m: Matroid) -> str:
    """Explicit base list with sorted labels."""
    order = sorted_labels(m.ground)
    canon = reorder(m, order)
    bases = sorted(base_masks(canon), key=lambda b: [i for i in range(len(order)) if b >> i & 1])
    body = " ".join("{" + " ".join(canon.labels(b)) + "}" for b in bases)
    return f"ground {' '.join(order)}\nbases {body}\n"
