"""Command-line front end: ``mulnet <command> [options]``.

Exit status is 0 for success or a true predicate, 1 for a false predicate
and 2 for unreadable input or a violated precondition.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Callable

from mulnet.codec import (
    CodecError,
    MultisetPartition,
    check_closed_form,
    decode,
    encode,
    format_partition,
    is_tree_generated,
    n_value,
    parse_partition,
)
from mulnet.enumeration import (
    BoundsError,
    EnumerationBounds,
    count_semi_labeled_trees,
    enumerate_networks,
    enumerate_trees,
)
from mulnet.folding import fold, is_stable, path_of, unfold
from mulnet.labeling import compute_full_labeling, is_labelable
from mulnet.multiset import Ordering, is_labeling_consistent
from mulnet.network import (
    FullyLabeledNetwork,
    LeafLabeledNetwork,
    NetworkError,
    ParseError,
    format_network,
    is_tree,
    parse_network,
    read_fully_labeled,
    read_leaf_labeled,
)
from mulnet.phylo import (
    PhyloError,
    check_non_degenerate_partition,
    check_tree_child_partition,
    format_cover,
    is_expanding_cover,
    is_expanding_partition,
    is_non_degenerate,
    is_phylogenetic,
    is_tree_child,
    network_to_partition,
    parse_cover,
    partition_to_cover,
    partition_to_network,
)

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2

PREDICATES = (
    "tree",
    "labelable",
    "stable",
    "phylogenetic",
    "tree-generated",
    "expanding-partition",
    "expanding-cover",
    "tree-child",
    "non-degenerate",
    "labeling-consistent",
)

NETWORK_PREDICATES: dict[str, Callable[[LeafLabeledNetwork], bool]] = {
    "tree": lambda x: is_tree(x),
    "labelable": is_labelable,
    "stable": is_stable,
    "phylogenetic": is_phylogenetic,
    "tree-child": is_tree_child,
    "non-degenerate": is_non_degenerate,
}

_NETWORK_KEYWORDS = ("vertex", "arc", "leaf", "label")


class InputError(Exception):
    """Bad input or a violated precondition; mapped to exit status 2."""


# -- io helpers ----------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def sniff(text: str) -> str:
    """Guess the file kind from its first content line: network, cover or partition."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("m="):
            return "cover"
        if line.split()[0] in _NETWORK_KEYWORDS:
            return "network"
        return "partition"
    raise InputError("input is empty")


def _fully_labeled(text: str, ordering: Ordering) -> FullyLabeledNetwork:
    """Use the labels given in the file, or run the labeling when only leaves carry one."""
    doc = parse_network(text)
    if doc.labels:
        return read_fully_labeled(text)
    return compute_full_labeling(read_leaf_labeled(text), ordering)[0]


# -- commands ------------------------------------------------------------------


def cmd_label(args: argparse.Namespace) -> int:
    x = read_leaf_labeled(_read(args.input))
    phi, trace = compute_full_labeling(x, args.order)
    notes = [f"ordering {args.order.value}"]
    notes += [f"round {s.label}: F={{{s.multiset}}} x{s.size}: {' '.join(s.vertices)}" for s in trace]
    _write(args.output, format_network(phi, notes))
    return EXIT_OK


def cmd_encode(args: argparse.Namespace) -> int:
    t = read_leaf_labeled(_read(args.input))
    enc = encode(t, args.order)
    notes = [
        f"ordering {args.order.value}",
        f"P: {enc.ground}",
        f"M: {enc.leaves}",
        f"n: {n_value(enc.ground, enc.partition)}",
    ]
    _write(args.output, format_partition(enc.partition, notes))
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    p = parse_partition(_read(args.input))
    _write(args.output, format_network(decode(p, args.order)))
    return EXIT_OK


def cmd_fold(args: argparse.Namespace) -> int:
    t = _fully_labeled(_read(args.input), args.order)
    _write(args.output, format_network(fold(t, args.order)))
    return EXIT_OK


def cmd_unfold(args: argparse.Namespace) -> int:
    x = _fully_labeled(_read(args.input), args.order)
    u = unfold(x, max_paths=args.max_paths)
    notes = [f"path {v}: {' -> '.join(path_of(v))}" for v in u.network.ordered_vertices]
    _write(args.output, format_network(u, notes))
    return EXIT_OK


def _check_partition(pred: str, p: MultisetPartition, order: Ordering) -> tuple[bool, str]:
    if pred == "tree-generated":
        res = is_tree_generated(p, order)
        return res.ok, "" if res.ok else f"guard {res.guard}: {res.reason}"
    if pred == "expanding-partition":
        return is_expanding_partition(p, order), ""
    if pred == "tree-child":
        return check_tree_child_partition(p, order), ""
    if pred == "non-degenerate":
        return check_non_degenerate_partition(p, order), ""
    raise InputError(f"predicate {pred} does not apply to a partition")


def cmd_check(args: argparse.Namespace) -> int:
    pred = args.predicate
    detail = ""
    if pred == "labeling-consistent":
        witness = is_labeling_consistent(args.order, args.max_label, args.max_size)
        ok = witness is None
        if not ok:
            a, b = witness
            detail = f"counterexample {{{a}}} {{{b}}}"
    else:
        text = _read(args.input)
        kind = sniff(text)
        if pred == "expanding-cover":
            if kind != "cover":
                raise InputError("expanding-cover needs a cover file")
            report = is_expanding_cover(parse_cover(text))
            ok = report.ok
            detail = "" if ok else "failed " + " ".join(report.failed())
        elif kind == "partition":
            ok, detail = _check_partition(pred, parse_partition(text), args.order)
            if pred == "tree-generated" and args.closed_form:
                report = check_closed_form(parse_partition(text), args.order)
                verdict = "agrees" if report.ok == ok else "disagrees"
                detail = "; ".join(filter(None, [detail, f"closed form {verdict}"]))
        elif kind == "network":
            if pred not in NETWORK_PREDICATES:
                raise InputError(f"predicate {pred} does not apply to a network")
            x = read_leaf_labeled(text)
            if pred == "stable":
                ok = is_stable(x, args.order)
            else:
                ok = NETWORK_PREDICATES[pred](x)
        else:
            raise InputError(f"predicate {pred} does not apply to a cover")
    line = "true" if ok else "false"
    if detail:
        line += f"  # {detail}"
    _write(args.output, line + "\n")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_to_partition(args: argparse.Namespace) -> int:
    x = read_leaf_labeled(_read(args.input))
    p = network_to_partition(x, args.order)
    _write(args.output, format_partition(p, [f"ordering {args.order.value}"]))
    return EXIT_OK


def cmd_to_network(args: argparse.Namespace) -> int:
    p = parse_partition(_read(args.input))
    _write(args.output, format_network(partition_to_network(p, args.order)))
    return EXIT_OK


def cmd_to_cover(args: argparse.Namespace) -> int:
    text = _read(args.input)
    kind = sniff(text)
    if kind == "network":
        p = network_to_partition(read_leaf_labeled(text), args.order)
    elif kind == "partition":
        p = parse_partition(text)
        if not is_expanding_partition(p, args.order):
            raise InputError("partition is not expanding")
    else:
        raise InputError("to-cover needs a network or a partition")
    _write(args.output, format_cover(partition_to_cover(p)))
    return EXIT_OK


def _bounds(args: argparse.Namespace) -> EnumerationBounds:
    return EnumerationBounds(
        max_vertices=args.max_vertices,
        max_leaf_label=args.max_label,
        require_gapless_leaves=args.gapless,
        phylogenetic_only=args.phylogenetic,
        trees_only=args.trees,
    )


def _population(bounds: EnumerationBounds):
    return enumerate_trees(bounds) if bounds.trees_only else enumerate_networks(bounds)


def cmd_enumerate(args: argparse.Namespace) -> int:
    bounds = _bounds(args)
    if args.count:
        _write(args.output, f"{sum(1 for _ in _population(bounds))}\n")
        return EXIT_OK
    chunks = []
    for i, x in enumerate(_population(bounds), start=1):
        chunks.append(format_network(x, [f"network {i}"]))
    _write(args.output, "\n".join(chunks))
    return EXIT_OK


def _bounds_tag(b: EnumerationBounds) -> str:
    tag = f"vertices<={b.max_vertices};labels<={b.max_leaf_label}"
    for flag, name in ((b.require_gapless_leaves, "gapless"), (b.phylogenetic_only, "phylogenetic"), (b.trees_only, "trees")):
        if flag:
            tag += f";{name}"
    return tag


def cmd_census(args: argparse.Namespace) -> int:
    if args.semi_labeled is not None:
        _write(args.output, f"{count_semi_labeled_trees(args.semi_labeled)}\n")
        return EXIT_OK
    bounds = _bounds(args)
    names = args.predicate or list(NETWORK_PREDICATES)
    unknown = [p for p in names if p not in NETWORK_PREDICATES]
    if unknown:
        raise InputError(f"census predicates must be network predicates, got {unknown[0]}")
    population = list(_population(bounds))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bounds", "predicate", "count"])
    tag = _bounds_tag(bounds)
    w.writerow([tag, "all", len(population)])
    for name in names:
        test = NETWORK_PREDICATES[name]
        w.writerow([tag, name, sum(1 for x in population if test(x))])
    _write(args.output, buf.getvalue())
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def _ordering(name: str) -> Ordering:
    try:
        return Ordering.from_name(name)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown ordering {name!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", default="-", help="input file, '-' for stdin")
    common.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")
    common.add_argument(
        "--order",
        type=_ordering,
        default=Ordering.ANTILEX,
        metavar="{antilex,lex-paper,lex-sorted}",
        help="multiset ordering used by the labeling (default antilex)",
    )

    bounded = argparse.ArgumentParser(add_help=False)
    bounded.add_argument("--max-vertices", type=int, default=5)
    bounded.add_argument("--max-label", type=int, default=1, help="largest leaf label")
    bounded.add_argument("--gapless", action="store_true", help="only gap-less leaf multisets")
    bounded.add_argument("--trees", action="store_true", help="trees only")
    bounded.add_argument("--phylogenetic", action="store_true", help="phylogenetic networks only")

    ap = argparse.ArgumentParser(prog="mulnet", description="Labeling, encoding and folding of leaf-labeled trees and networks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str, *parents) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common, *parents], help=help_)
        p.set_defaults(func=fn)
        return p

    add("label", cmd_label, "extend leaf labels to every vertex")
    add("encode", cmd_encode, "tree to multiset partition")
    add("decode", cmd_decode, "multiset partition to tree")
    add("fold", cmd_fold, "fold a fully labeled tree into a network")
    p = add("unfold", cmd_unfold, "unfold a fully labeled network into its tree of root paths")
    p.add_argument("--max-paths", type=int, default=10**5)
    p = add("check", cmd_check, "evaluate a predicate; exit 0 if true, 1 if false")
    p.add_argument("predicate", choices=PREDICATES)
    p.add_argument("--max-label", type=int, default=4, help="value bound for labeling-consistent")
    p.add_argument("--max-size", type=int, default=3, help="size bound for labeling-consistent")
    p.add_argument("--closed-form", action="store_true", help="also evaluate the closed-form conditions")
    add("to-partition", cmd_to_partition, "stable phylogenetic network to expanding partition")
    add("to-network", cmd_to_network, "expanding partition to network")
    add("to-cover", cmd_to_cover, "expanding partition or network to expanding cover")
    p = add("enumerate", cmd_enumerate, "list every network within bounds", bounded)
    p.add_argument("--count", action="store_true", help="print only the number of networks")
    p = add("census", cmd_census, "count networks per predicate as CSV", bounded)
    p.add_argument("--predicate", action="append", choices=sorted(NETWORK_PREDICATES))
    p.add_argument("--semi-labeled", type=int, metavar="N", help="count trees with N+1 vertices and leaves labeled 1..l")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"mulnet: parse error: {exc}", file=sys.stderr)
    except (InputError, NetworkError, CodecError, PhyloError, BoundsError, ValueError) as exc:
        print(f"mulnet: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
