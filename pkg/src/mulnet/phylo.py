"""Phylogenetic networks, expanding covers and expanding partitions, and
the partition-level descriptions of tree-child and non-degenerate networks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from mulnet.codec import (
    CodecError,
    ConditionReport,
    MultisetPartition,
    _consistent,
    decode,
    encode,
    is_tree_generated,
    n_value,
)
from mulnet.folding import fold, unfold
from mulnet.labeling import compute_full_labeling, is_labelable
from mulnet.multiset import Multiset, Ordering
from mulnet.network import LeafLabeledNetwork


class PhyloError(ValueError):
    pass


def is_phylogenetic(x: LeafLabeledNetwork) -> bool:
    """Every leaf has in-degree 1 and leaves are labeled bijectively by 1..n."""
    net = x.network
    leaves = net.leaves
    if any(net.indegree(v) != 1 for v in leaves):
        return False
    return sorted(x.leaf_labels[v] for v in leaves) == list(range(1, len(leaves) + 1))


@dataclass(frozen=True)
class ExpandingCover:
    sets: frozenset[frozenset[int]]
    m: int

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]], m: int | None = None) -> ExpandingCover:
        fs = [frozenset(s) for s in sets]
        if len(set(fs)) != len(fs):
            raise PhyloError("cover sets must be distinct")
        if any(not s for s in fs):
            raise PhyloError("cover sets must be non-empty")
        if any(x < 1 for s in fs for x in s):
            raise PhyloError("cover elements must be positive integers")
        if m is None:
            m = max(max(s) for s in fs) if fs else 0
        return cls(frozenset(fs), m)

    @property
    def n(self) -> int:
        return self.m - len(self.sets) + 1

    def ordered(self) -> list[list[int]]:
        return sorted((sorted(s) for s in self.sets), key=lambda s: (len(s), s))


def is_expanding_cover(cover: ExpandingCover) -> ConditionReport:
    sets = list(cover.sets)
    m, n = cover.m, cover.n
    report = ConditionReport()
    union: set[int] = set().union(*sets) if sets else set()
    report.conditions["EC1"] = union == set(range(1, m + 1))
    report.conditions["EC2"] = n >= 1
    report.conditions["EC3"] = all(sum(x in s for s in sets) == 1 for x in range(1, n + 1))
    report.conditions["EC4"] = all(
        sum(max(s) <= n + i - 1 for s in sets) >= i for i in range(1, len(sets) + 1)
    )
    return report


def parse_cover(text: str) -> ExpandingCover:
    m: int | None = None
    sets: list[frozenset[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("m="):
            if m is not None:
                raise PhyloError(f"line {lineno}: repeated m= header")
            try:
                m = int(line[2:])
            except ValueError:
                raise PhyloError(f"line {lineno}: bad header {line!r}") from None
            continue
        try:
            values = [int(t) for t in line.split()]
        except ValueError:
            raise PhyloError(f"line {lineno}: bad set {line!r}") from None
        if len(set(values)) != len(values):
            raise PhyloError(f"line {lineno}: {line!r} repeats an element")
        s = frozenset(values)
        if s in sets:
            raise PhyloError(f"line {lineno}: duplicate set {line!r}")
        sets.append(s)
    if m is None:
        raise PhyloError("missing m= header")
    return ExpandingCover.of(sets, m)


def format_cover(cover: ExpandingCover) -> str:
    lines = [f"m={cover.m}"]
    lines.extend(" ".join(map(str, s)) for s in cover.ordered())
    return "\n".join(lines) + "\n"


def _distinct_blocks(partition: MultisetPartition) -> list[Multiset]:
    return partition.distinct()


def satisfies_ep1(partition: MultisetPartition) -> bool:
    return all(b.is_set() for b in partition.blocks)


def satisfies_ep2(partition: MultisetPartition) -> bool:
    # Distinct block values only; repeated copies of one block stand for a
    # single vertex reached along several root paths.
    n = n_value(partition.ground(), partition)
    blocks = _distinct_blocks(partition)
    for i, a in enumerate(blocks):
        low_a = {x for x in a if x <= n}
        for b in blocks[i + 1:]:
            if low_a.intersection(b):
                return False
    return True


def is_expanding_partition(partition: MultisetPartition, ordering: Ordering = Ordering.ANTILEX) -> bool:
    return (
        satisfies_ep1(partition)
        and bool(is_tree_generated(partition, ordering))
        and satisfies_ep2(partition)
    )


def network_to_partition(x: LeafLabeledNetwork, ordering: Ordering = Ordering.ANTILEX) -> MultisetPartition:
    if not is_phylogenetic(x):
        raise PhyloError("network is not phylogenetic")
    if not is_labelable(x):
        raise PhyloError("network is not stable")
    phi, _ = compute_full_labeling(x, ordering)
    tree = unfold(phi).leaf_labeled()
    return encode(tree, ordering).partition


def build_network(partition: MultisetPartition, ordering: Ordering = Ordering.ANTILEX) -> LeafLabeledNetwork:
    """Decode, label, fold and keep leaf labels; no expanding-partition check."""
    tree = decode(partition, ordering)
    phi, _ = compute_full_labeling(tree, ordering)
    return fold(phi, ordering, verify=False).leaf_labeled()


def partition_to_network(partition: MultisetPartition, ordering: Ordering = Ordering.ANTILEX) -> LeafLabeledNetwork:
    if not is_expanding_partition(partition, ordering):
        raise PhyloError(f"{partition!r} is not an expanding partition")
    return build_network(partition, ordering)


def partition_to_cover(partition: MultisetPartition) -> ExpandingCover:
    """Distinct blocks as sets; raises when a block repeats an element."""
    blocks = _distinct_blocks(partition)
    bad = [b for b in blocks if not b.is_set()]
    if bad:
        raise PhyloError(f"block {bad[0]!r} is not a set")
    return ExpandingCover.of((b.elements for b in blocks), max(b.max() for b in blocks))


def is_non_degenerate(x: LeafLabeledNetwork) -> bool:
    net = x.network
    for v in net.vertices:
        i, o = net.indegree(v), net.outdegree(v)
        if (i == 1 and o == 1) or (i > 1 and o > 1):
            return False
    return True


def _require_expanding(partition: MultisetPartition, ordering: Ordering) -> None:
    if not is_expanding_partition(partition, ordering):
        raise PhyloError(f"{partition!r} is not an expanding partition")


def check_non_degenerate_partition(partition: MultisetPartition, ordering: Ordering = Ordering.ANTILEX) -> bool:
    """For the i-th smallest distinct block (root excluded): if it has more
    than one element, label n+i lies in at most one distinct block; if it is
    a singleton, label n+i lies in at least two."""
    if not _consistent(ordering):
        raise CodecError(f"ordering {ordering.value} is not labeling-consistent")
    _require_expanding(partition, ordering)
    n = n_value(partition.ground(), partition)
    blocks = partition.sorted_distinct(ordering)
    for i, f in enumerate(blocks[:-1], start=1):
        holders = sum(1 for b in blocks if b[n + i] >= 1)
        if len(f) > 1 and holders > 1:
            return False
        if len(f) == 1 and holders < 2:
            return False
    return True


def is_tree_child(x: LeafLabeledNetwork) -> bool:
    net = x.network
    return all(any(net.indegree(w) == 1 for w in net.children(v)) for v in net.interior)


def check_tree_child_partition(partition: MultisetPartition, ordering: Ordering = Ordering.ANTILEX) -> bool:
    """Every distinct block owns an element that no other distinct block has."""
    _require_expanding(partition, ordering)
    blocks = _distinct_blocks(partition)
    for i, f in enumerate(blocks):
        others: set[int] = set()
        for j, g in enumerate(blocks):
            if j != i:
                others.update(g)
        if all(x in others for x in f):
            return False
    return True
