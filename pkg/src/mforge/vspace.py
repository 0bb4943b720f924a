"""Vector spaces as canonical row spaces with labeled columns.

A ``VSpace`` stores the reduced row echelon basis of the space, so two
spaces over the same field and column order are equal exactly when their
stored rows are equal.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import PreconditionError
from .fields import Field
from .labels import check_unique


def rref(field: Field, rows: Iterable[Sequence], ncols: int) -> tuple[tuple[tuple, ...], tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        src = next((i for i in range(top, len(mat)) if mat[i][col] != 0), None)
        if src is None:
            continue
        mat[top], mat[src] = mat[src], mat[top]
        lead = mat[top][col]
        if lead != 1:
            scale = field.inv(lead)
            mat[top] = [field.mul(x, scale) for x in mat[top]]
        pivot_row = mat[top]
        for i in range(len(mat)):
            if i != top and mat[i][col] != 0:
                factor = mat[i][col]
                row = mat[i]
                mat[i] = [field.sub(row[j], field.mul(factor, pivot_row[j])) for j in range(ncols)]
        pivots.append(col)
        top += 1
        if top == len(mat):
            break
    return tuple(tuple(r) for r in mat[:top]), tuple(pivots)


@dataclass(frozen=True)
class VSpace:
    field: Field
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"VSpace({self.field!r}, cols={' '.join(self.columns)}, [{body}])"

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x != 0) for r in self.rows)

    def index(self, label: str) -> int:
        try:
            return self.columns.index(label)
        except ValueError:
            raise PreconditionError(f"unknown column {label!r}") from None


def make_space(field: Field, rows: Iterable[Sequence], columns: Sequence[str]) -> VSpace:
    columns = tuple(columns)
    check_unique(columns)
    coerced = []
    for r in rows:
        if len(r) != len(columns):
            raise PreconditionError(f"row of length {len(r)} on {len(columns)} columns")
        coerced.append([field.coerce(x) for x in r])
    basis, _ = rref(field, coerced, len(columns))
    return VSpace(field, columns, basis)


def zero_space(field: Field, columns: Sequence[str]) -> VSpace:
    return make_space(field, [], columns)


def full_space(field: Field, columns: Sequence[str]) -> VSpace:
    n = len(columns)
    return make_space(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], columns)


def rank(space: VSpace) -> int:
    return space.rank


def _subset(space: VSpace, labels: Iterable[str]) -> tuple[str, ...]:
    wanted = set(labels)
    unknown = wanted - set(space.columns)
    if unknown:
        raise PreconditionError(f"unknown columns {sorted(unknown)}")
    return tuple(c for c in space.columns if c in wanted)


def reorder(space: VSpace, order: Sequence[str]) -> VSpace:
    """Same space with its columns listed in ``order`` (a permutation)."""
    order = tuple(order)
    if sorted(order) != sorted(space.columns):
        raise PreconditionError("reorder needs a permutation of the columns")
    if order == space.columns:
        return space
    idx = [space.columns.index(c) for c in order]
    return make_space(space.field, [[r[i] for i in idx] for r in space.rows], order)


def restrict(space: VSpace, labels: Iterable[str]) -> VSpace:
    """Projection onto ``labels`` (the ``∘T`` operation)."""
    keep = _subset(space, labels)
    idx = [space.columns.index(c) for c in keep]
    return make_space(space.field, [[r[i] for i in idx] for r in space.rows], keep)


def contract(space: VSpace, labels: Iterable[str]) -> VSpace:
    """Vectors vanishing off ``labels``, restricted to ``labels`` (the ``×T`` operation)."""
    keep = _subset(space, labels)
    keepset = set(keep)
    outside = tuple(c for c in space.columns if c not in keepset)
    moved = reorder(space, outside + keep)
    cut = len(outside)
    rows = [r[cut:] for r, p in zip(moved.rows, moved.pivots) if p >= cut]
    return make_space(space.field, rows, keep)


def minor(space: VSpace, outer: Iterable[str], inner: Iterable[str]) -> VSpace:
    """``(V∘outer)×inner``; requires inner ⊆ outer."""
    outer, inner = set(outer), set(inner)
    if not inner <= outer:
        raise PreconditionError("minor needs inner ⊆ outer")
    return contract(restrict(space, outer), inner)


def _split(left: VSpace, right: VSpace) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    if left.field != right.field:
        raise PreconditionError(f"field mismatch {left.field!r} vs {right.field!r}")
    rset = set(right.columns)
    lset = set(left.columns)
    only_left = tuple(c for c in left.columns if c not in rset)
    shared = tuple(c for c in left.columns if c in rset)
    only_right = tuple(c for c in right.columns if c not in lset)
    return only_left, shared, only_right


def _pad(space: VSpace, columns: Sequence[str]) -> list[list]:
    """Rows of ``space`` embedded in ``columns`` with zeros elsewhere."""
    pos = {c: i for i, c in enumerate(columns)}
    n = len(columns)
    out = []
    for r in space.rows:
        row = [0] * n
        for c, x in zip(space.columns, r):
            row[pos[c]] = x
        out.append(row)
    return out


def sum_spaces(left: VSpace, right: VSpace) -> VSpace:
    """Zero-padded sum on the union of the column sets."""
    s, p, q = _split(left, right)
    cols = s + p + q
    return make_space(left.field, _pad(left, cols) + _pad(right, cols), cols)


def intersect(left: VSpace, right: VSpace) -> VSpace:
    """Full-padded intersection on the union of the column sets."""
    return orthogonal(sum_spaces(orthogonal(left), orthogonal(right)))


def direct_sum(left: VSpace, right: VSpace) -> VSpace:
    if set(left.columns) & set(right.columns):
        raise PreconditionError("direct sum needs disjoint columns")
    return sum_spaces(left, right)


def orthogonal(space: VSpace) -> VSpace:
    field = space.field
    n = len(space.columns)
    pivots = space.pivots
    pset = set(pivots)
    rows = []
    for free in range(n):
        if free in pset:
            continue
        vec = [0] * n
        vec[free] = 1
        for r, p in zip(space.rows, pivots):
            vec[p] = field.neg(r[free])
        rows.append(vec)
    return make_space(field, rows, space.columns)


def negate_on(space: VSpace, labels: Iterable[str]) -> VSpace:
    flip = set(_subset(space, labels))
    mask = [c in flip for c in space.columns]
    field = space.field
    return make_space(field, [[field.neg(x) if m else x for x, m in zip(r, mask)] for r in space.rows], space.columns)


def relabel(space: VSpace, mapping: Mapping[str, str]) -> VSpace:
    """Rename columns in place; labels missing from ``mapping`` are kept."""
    new = tuple(mapping.get(c, c) for c in space.columns)
    if len(set(new)) != len(new):
        raise PreconditionError("relabel mapping is not injective on the columns")
    return VSpace(space.field, new, space.rows)


def matched_compose(left: VSpace, right: VSpace) -> VSpace:
    """Pairs (f_S, g_Q) linked through some common h on the shared columns."""
    s, _, q = _split(left, right)
    return restrict(intersect(left, right), s + q)


def matched_compose_by_sum(left: VSpace, right: VSpace) -> VSpace:
    """Second route to ``matched_compose``: contract the sign-twisted sum."""
    s, p, q = _split(left, right)
    return contract(sum_spaces(left, negate_on(right, p)), s + q)


def column_base(space: VSpace) -> tuple[str, ...]:
    return tuple(space.columns[p] for p in space.pivots)


def contains(big: VSpace, small: VSpace) -> bool:
    """Whether ``small`` is a subspace of ``big`` (same columns, any order)."""
    small = reorder(small, big.columns)
    return sum_spaces(big, small).rank == big.rank


def is_member(space: VSpace, vector: Sequence) -> bool:
    rows = list(space.rows) + [[space.field.coerce(x) for x in vector]]
    basis, _ = rref(space.field, rows, len(space.columns))
    return len(basis) == space.rank


def same_space(a: VSpace, b: VSpace) -> bool:
    """Equality up to column order."""
    if a.field != b.field or set(a.columns) != set(b.columns):
        return False
    return reorder(b, a.columns) == a
