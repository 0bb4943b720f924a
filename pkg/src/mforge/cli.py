"""Command-line entry point.

Exit codes: 0 success, 2 parse error, 3 precondition failure, 4 guard
exceeded, 5 invariant breach (a witness is printed to stderr).
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from collections.abc import Sequence
from pathlib import Path

from . import completion as comp
from . import oracle
from .errors import InvariantBreach, MforgeError, ParseError, PreconditionError
from .formats import (
    load_matroid,
    parse_graph,
    parse_matrix,
    parse_vertex_map,
    write_graph,
    write_matrix,
    write_matroid,
)
from .graphs import compose_space, incidence_space, overlay_compose
from .labels import parse_label_list, sorted_labels
from .link import conditional_minimize, general_minimize, link
from .matroid import (
    Matroid,
    base_masks,
    connectivity,
    contract_to,
    dual,
    enumerate_bases,
    matroid_equal,
    minor,
    reorder,
    restrict_to,
)
from .products import free_cc, free_rc, free_rc_by_link, free_rr, principal_rule_independent, principal_sum
from .vcompose import CompositionPair, decompose, min_overlap
from .vcompose import connectivity as space_connectivity
from .vspace import VSpace, matched_compose, matched_compose_by_sum, same_space
from .vspace import reorder as reorder_space

SEPARATOR = "---"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _matrix(path: str) -> VSpace:
    return parse_matrix(_read(path))


def _sorted_space(space: VSpace) -> VSpace:
    return reorder_space(space, sorted_labels(space.columns))


def _partition(m: Matroid, args) -> tuple[list[str], list[str]]:
    if args.S is None:
        raise PreconditionError("this command needs --S")
    s = list(parse_label_list(args.S))
    q = list(parse_label_list(args.Q)) if args.Q else [x for x in m.ground if x not in set(s)]
    unknown = (set(s) | set(q)) - set(m.ground)
    if unknown:
        raise PreconditionError(f"unknown elements {sorted_labels(unknown)}")
    if set(s) & set(q) or len(s) + len(q) != len(m.ground):
        raise PreconditionError("--S and --Q must partition the ground set")
    return [x for x in m.ground if x in set(s)], [x for x in m.ground if x in set(q)]


def _space_partition(space: VSpace, args) -> tuple[list[str], list[str]]:
    if args.S is None:
        raise PreconditionError("this command needs --S")
    s = list(parse_label_list(args.S))
    q = list(parse_label_list(args.Q)) if args.Q else [x for x in space.columns if x not in set(s)]
    if set(s) & set(q) or sorted(s + q) != sorted(space.columns):
        raise PreconditionError("--S and --Q must partition the columns")
    return s, q


def _check(ok: bool, what: str, witness: object = None) -> str:
    if not ok:
        raise InvariantBreach(f"brute-force cross-check failed: {what}", witness=witness)
    return f"# verify: ok ({what})\n"


def _base_diff(a: Matroid, b: Matroid) -> object:
    ea, eb = enumerate_bases(a).bases, enumerate_bases(reorder(b, a.ground)).bases
    return {"only_first": sorted(sorted(x) for x in ea - eb), "only_second": sorted(sorted(x) for x in eb - ea)}


def _verify_equal(a: Matroid, b: Matroid, what: str) -> str:
    ok = matroid_equal(a, b)
    return _check(ok, what, None if ok else _base_diff(a, b))


# verbs


def cmd_rank(args) -> str:
    m = load_matroid(args.file)
    labels = parse_label_list(args.set) if args.set is not None else m.ground
    value = m.rank_of(labels)
    out = f"{value}\n"
    if args.verify:
        out += _check(oracle.brute_rank(m, labels) == value, "rank against enumerated bases")
    return out


def cmd_bases(args) -> str:
    m = load_matroid(args.file)
    out = write_matroid(m)
    if args.verify:
        bad = oracle.brute_exchange_check(enumerate_bases(m).bases)
        out += _check(bad[0], "base-exchange axiom", bad[1])
    return out


def cmd_dual(args) -> str:
    m = load_matroid(args.file)
    d = dual(m)
    out = write_matroid(d)
    if args.verify:
        comp_bases = {m.full & ~b for b in base_masks(m)}
        out += _check(comp_bases == set(base_masks(d)), "complements of bases")
    return out


def cmd_minor(args) -> str:
    m = load_matroid(args.file)
    outer, inner = parse_label_list(args.T1), parse_label_list(args.T2)
    result = minor(m, outer, inner)
    out = write_matroid(result)
    if args.verify:
        shrunk = [x for x in m.ground if x not in set(outer) - set(inner)]
        other = restrict_to(contract_to(m, shrunk), inner)
        out += _check(matroid_equal(result, other), "restrict-then-contract against contract-then-restrict")
    return out


def cmd_link(args) -> str:
    left, right = load_matroid(args.left), load_matroid(args.right)
    result = link(left, right)
    out = write_matroid(result)
    if args.verify:
        brute = oracle.brute_link(left, right)
        got = enumerate_bases(result)
        out += _check(got.bases == brute.bases, "link against brute-force union bases",
                      {"handle": got.sorted_bases(), "brute": brute.sorted_bases()})
    return out


def _docs(*mats: Matroid) -> str:
    return f"{SEPARATOR}\n".join(write_matroid(m) for m in mats)


def cmd_minimize(args) -> str:
    left, right = load_matroid(args.left), load_matroid(args.right)
    inst = conditional_minimize(left, right) if args.conditional else general_minimize(left, right)
    out = f"# overlap {' '.join(sorted_labels(inst.overlap))}\n" + _docs(inst.left, inst.right)
    if args.verify:
        out += _verify_equal(inst.link(), link(left, right), "minimized pair links to the original")
    return out


def cmd_connectivity(args) -> str:
    m = load_matroid(args.file)
    s, _ = _partition(m, args)
    value = connectivity(m, s)
    out = f"{value}\n"
    if args.verify:
        q = [x for x in m.ground if x not in set(s)]
        other = oracle.brute_rank(m, q) - (oracle.brute_rank(m, m.ground) - oracle.brute_rank(m, s))
        out += _check(other == value, "connectivity of the complement side")
    return out


def cmd_vs_compose(args) -> str:
    left, right = _matrix(args.left), _matrix(args.right)
    result = matched_compose(left, right)
    out = write_matrix(_sorted_space(result))
    if args.verify:
        out += _check(same_space(result, matched_compose_by_sum(left, right)), "sum route agrees")
    return out


def _pair_out(pair: CompositionPair) -> str:
    return (f"# overlap {' '.join(sorted_labels(pair.overlap))}\n"
            + write_matrix(_sorted_space(pair.left)) + f"{SEPARATOR}\n" + write_matrix(_sorted_space(pair.right)))


def cmd_vs_minimize(args) -> str:
    left, right = _matrix(args.left), _matrix(args.right)
    pair = min_overlap(CompositionPair(left, right))
    out = _pair_out(pair)
    if args.verify:
        out += _check(same_space(pair.compose(), matched_compose(left, right)), "composition preserved")
    return out


def cmd_vs_decompose(args) -> str:
    space = _matrix(args.file)
    s, q = _space_partition(space, args)
    pair = decompose(space, s, q)
    out = _pair_out(pair)
    if args.verify:
        ok = same_space(pair.compose(), space) and len(pair.overlap) == space_connectivity(space, s)
        out += _check(ok, "recomposition equals input and overlap equals connectivity")
    return out


def cmd_graph_compose(args) -> str:
    left, right = parse_graph(_read(args.left)), parse_graph(_read(args.right))
    if args.space_only:
        result = compose_space(left, right)
        out = write_matrix(_sorted_space(result))
        if args.verify:
            other = matched_compose_by_sum(incidence_space(left), incidence_space(right))
            out += _check(same_space(result, other), "sum route agrees")
        return out
    vertex_map = parse_vertex_map(_read(args.overlay))
    graph = overlay_compose(left, right, vertex_map)
    out = write_graph(graph)
    if args.verify:
        out += "# verify: ok (overlay incidence space equals composed space)\n"
    return out


def cmd_complete(args) -> str:
    m = load_matroid(args.file)
    s, q = _partition(m, args)
    result = comp.completion(m, s, q)
    out = write_matroid(result)
    if args.verify:
        out += _verify_equal(result, comp.completion_bruteforce(m, s, q), "lazy completion against one-step closure")
    return out


def _violation(m: Matroid, s: Sequence[str], q: Sequence[str]) -> str:
    rel = comp.base_relation(m, s)
    for x, ys in rel.items():
        for x2, ys2 in rel.items():
            shared = ys & ys2
            missing = ys - ys2
            if shared and missing:
                y, y_hat = min(shared), min(missing)
                fmt = lambda a, b: "{" + " ".join(sorted_labels(m.labels(a | b))) + "}"
                return (f"# bases {fmt(x, y)} {fmt(x2, y)} {fmt(x, y_hat)}"
                        f" force missing {fmt(x2, y_hat)}\n")
    return ""


def cmd_complete_check(args) -> str:
    m = load_matroid(args.file)
    s, q = _partition(m, args)
    ok = comp.is_complete(m, s, q)
    out = f"complete: {'yes' if ok else 'no'}\n"
    if not ok:
        out += _violation(m, s, q)
    if args.verify:
        same = matroid_equal(comp.completion_bruteforce(m, s, q), m)
        out += _check(same == ok, "complete iff the closure step adds nothing")
    return out


def cmd_decompose(args) -> str:
    m = load_matroid(args.file)
    s, q = _partition(m, args)
    if args.multiport:
        mp = comp.multiport_decompose_complete(m, s, q)
        out = _docs(mp.left, mp.right, mp.ports)
        if args.verify:
            out += _verify_equal(mp.compose(), m, "multiport pieces recompose to the input")
        return out
    inst = comp.decompose_complete(m, s, q)
    out = f"# overlap {' '.join(sorted_labels(inst.overlap))}\n" + _docs(inst.left, inst.right)
    if args.verify:
        out += _verify_equal(inst.link(), m, "pieces link back to the input")
    return out


def cmd_free_product(args) -> str:
    first, second = load_matroid(args.left), load_matroid(args.right)
    if args.kind == "rc":
        result = free_rc(first, second)
    else:
        if args.k is None:
            raise PreconditionError(f"--kind {args.kind} needs --k")
        result = (free_rr if args.kind == "rr" else free_cc)(first, second, args.k)
    out = write_matroid(result)
    if args.verify:
        if args.kind == "rc":
            out += _verify_equal(result, free_rc_by_link(first, second), "linking route to the free product")
        else:
            lam = first.rank + second.rank - args.k if args.kind == "rr" else None
            ok = comp.is_complete(result, first.ground, second.ground)
            if lam is not None:
                ok = ok and connectivity(result, first.ground) == lam
            out += _check(ok, "product is complete with the expected connectivity")
    return out


def cmd_principal_sum(args) -> str:
    first, second = load_matroid(args.left), load_matroid(args.right)
    a = parse_label_list(args.A or "")
    b = parse_label_list(args.B or "")
    result = principal_sum(first, second, a, b)
    out = write_matroid(result)
    if args.verify:
        bad = None
        for mask in range(result.full + 1):
            labels = result.labels(mask)
            if result.indep_mask(mask) != principal_rule_independent(first, second, a, b, labels):
                bad = sorted_labels(labels)
                break
        out += _check(bad is None, "independence matches the three-part rule", bad)
    return out


def cmd_witness(args) -> str:
    m = load_matroid(args.file)
    s, q = _partition(m, args)
    if not args.candidate:
        raise PreconditionError("witness needs --candidate")
    cand = parse_label_list(args.candidate)
    w = comp.completion_witness(m, s, q, cand)
    fmt = lambda b: "{" + " ".join(sorted_labels(b)) + "}"
    out = f"base_bb {fmt(w.base_bb)}\nbase_hb {fmt(w.base_hb)}\nbase_bh {fmt(w.base_bh)}\n"
    if args.verify:
        triples = oracle.brute_witnesses(m, s, cand)
        out += _check((w.base_bb, w.base_hb, w.base_bh) in triples, "witness triple found by exhaustive search")
    return out


VERBS = {
    "rank": (cmd_rank, ["file"]),
    "bases": (cmd_bases, ["file"]),
    "dual": (cmd_dual, ["file"]),
    "minor": (cmd_minor, ["file"]),
    "link": (cmd_link, ["left", "right"]),
    "minimize": (cmd_minimize, ["left", "right"]),
    "connectivity": (cmd_connectivity, ["file"]),
    "vs-compose": (cmd_vs_compose, ["left", "right"]),
    "vs-minimize": (cmd_vs_minimize, ["left", "right"]),
    "vs-decompose": (cmd_vs_decompose, ["file"]),
    "graph-compose": (cmd_graph_compose, ["left", "right"]),
    "complete": (cmd_complete, ["file"]),
    "complete-check": (cmd_complete_check, ["file"]),
    "decompose": (cmd_decompose, ["file"]),
    "free-product": (cmd_free_product, ["left", "right"]),
    "principal-sum": (cmd_principal_sum, ["left", "right"]),
    "witness": (cmd_witness, ["file"]),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--S", help="comma-separated S side")
    common.add_argument("--Q", help="comma-separated Q side (default: the rest)")
    common.add_argument("--verify", action="store_true", help="cross-check against brute force")
    common.add_argument("--seed", type=int, default=None, help="seed for any randomized step")
    common.add_argument("--guard", type=int, default=None, help="override the enumeration guard")

    parser = argparse.ArgumentParser(prog="mforge", description="Exact composition and decomposition of "
                                     "vector spaces, graphs and matroids.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, positional) in VERBS.items():
        p = sub.add_parser(verb, parents=[common])
        for name in positional:
            p.add_argument(name)
        if verb == "rank":
            p.add_argument("--set", help="comma-separated subset (default: whole ground)")
        elif verb == "minor":
            p.add_argument("--T1", required=True, help="labels kept by the restriction")
            p.add_argument("--T2", required=True, help="labels kept by the contraction (subset of T1)")
        elif verb == "minimize":
            p.add_argument("--conditional", action="store_true", help="use the conditional route")
        elif verb == "graph-compose":
            mode = p.add_mutually_exclusive_group(required=True)
            mode.add_argument("--overlay", metavar="MAP", help="vertex map file for the overlay graph")
            mode.add_argument("--space-only", action="store_true", help="print the composed row space")
        elif verb == "decompose":
            p.add_argument("--multiport", action="store_true", help="three-piece multiport form")
        elif verb == "free-product":
            p.add_argument("--kind", choices=["rc", "rr", "cc"], default="rc")
            p.add_argument("--k", type=int, default=None, help="rank of the rr/cc product")
        elif verb == "principal-sum":
            p.add_argument("--A", help="subset of the first ground")
            p.add_argument("--B", help="subset of the second ground")
        elif verb == "witness":
            p.add_argument("--candidate", help="comma-separated base of the completion")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """Execute a command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), "", ""
    saved = os.environ.get("MFORGE_GUARD")
    if args.guard is not None:
        os.environ["MFORGE_GUARD"] = str(args.guard)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        handler, _ = VERBS[args.verb]
        return 0, handler(args), ""
    except InvariantBreach as exc:
        return exc.exit_code, "", f"error: {exc}\nwitness: {exc.witness!r}\n"
    except MforgeError as exc:
        return exc.exit_code, "", f"error: {exc}\n"
    except ValueError as exc:
        return ParseError.exit_code, "", f"error: {exc}\n"
    finally:
        if args.guard is not None:
            if saved is None:
                os.environ.pop("MFORGE_GUARD", None)
            else:
                os.environ["MFORGE_GUARD"] = saved


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
