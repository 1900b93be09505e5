"""Multiset partitions of leaf-labeled trees: encoding, reconstruction,
and deciding which partitions arise from trees."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple

from mulnet.labeling import compute_full_labeling
from mulnet.multiset import (
    Multiset,
    Ordering,
    is_gapless,
    is_labeling_consistent,
    multiset_sum,
    parse_multiset,
    sort_key,
)
from mulnet.network import LeafLabeledNetwork, RootedNetwork, is_tree


class CodecError(ValueError):
    pass


class NotTreeGenerated(CodecError):
    """Raised by :func:`decode`; ``guard`` names the failed check (a-e)."""

    def __init__(self, guard: str, reason: str):
        super().__init__(f"not tree-generated ({guard}): {reason}")
        self.guard = guard
        self.reason = reason


def _block_key(m: Multiset) -> tuple:
    return (len(m), m.elements)


class MultisetPartition:
    """A multiset of non-empty blocks; its ground multiset is the block sum."""

    __slots__ = ("_blocks",)

    def __init__(self, blocks: Iterable[Multiset | Iterable[int]]):
        bs = [b if isinstance(b, Multiset) else Multiset(b) for b in blocks]
        if not bs:
            raise CodecError("a partition needs at least one block")
        if any(not b for b in bs):
            raise CodecError("blocks must be non-empty")
        self._blocks = tuple(sorted(bs, key=_block_key))

    @property
    def blocks(self) -> tuple[Multiset, ...]:
        return self._blocks

    def ground(self) -> Multiset:
        return multiset_sum(self._blocks)

    def multiplicity(self, block: Multiset) -> int:
        return self._blocks.count(block)

    def distinct(self) -> list[Multiset]:
        return sorted(set(self._blocks), key=_block_key)

    def sorted_distinct(self, ordering: Ordering) -> list[Multiset]:
        return sorted(set(self._blocks), key=lambda b: sort_key(ordering, b))

    def counts(self) -> Counter:
        return Counter(self._blocks)

    def __len__(self) -> int:
        return len(self._blocks)

    def __iter__(self):
        return iter(self._blocks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultisetPartition):
            return NotImplemented
        return self._blocks == other._blocks

    def __hash__(self) -> int:
        return hash(self._blocks)

    def __repr__(self) -> str:
        return "{" + ",".join(repr(b) for b in self._blocks) + "}"


def parse_partition(text: str) -> MultisetPartition:
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            blocks.append(parse_multiset(line))
        except ValueError as exc:
            raise CodecError(f"line {lineno}: {exc}") from None
    return MultisetPartition(blocks)


def format_partition(partition: MultisetPartition, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.extend(str(b) for b in partition.blocks)
    return "\n".join(lines) + "\n"


class Encoding(NamedTuple):
    ground: Multiset
    partition: MultisetPartition
    leaves: Multiset


def encode(t: LeafLabeledNetwork, ordering: Ordering = Ordering.ANTILEX) -> Encoding:
    """Labels of non-root vertices, child-label blocks of interior vertices,
    and the leaf-label multiset."""
    net = t.network
    if not is_tree(net):
        raise CodecError("encode needs a leaf-labeled tree")
    if len(net) == 1:
        raise CodecError("a single-vertex tree has no interior vertex and hence no partition")
    phi, _ = compute_full_labeling(t, ordering)
    ground = Multiset(phi.labels[v] for v in net.vertices if v != net.root)
    blocks = [Multiset(phi.labels[w] for w in net.children(u)) for u in net.interior]
    leaves = Multiset(t.leaf_labels[v] for v in net.leaves)
    return Encoding(ground, MultisetPartition(blocks), leaves)


def _check_ground(ground: Multiset, partition: MultisetPartition) -> None:
    if ground != partition.ground():
        raise CodecError(f"{ground!r} is not the ground multiset of the partition")


def leaf_count(ground: Multiset, partition: MultisetPartition) -> int:
    _check_ground(ground, partition)
    return len(ground) + 1 - len(partition)


def n_value(ground: Multiset, partition: MultisetPartition) -> int:
    """Element at 1-based position ``|P| + 1 - |partition|`` of sorted P."""
    return ground.elements[leaf_count(ground, partition) - 1]


def leaf_multiset(ground: Multiset, partition: MultisetPartition) -> Multiset:
    # Only meaningful for tree-generated partitions; not re-verified here.
    n = n_value(ground, partition)
    return Multiset(x for x in ground if x <= n)


def _build_tree(partition: MultisetPartition, ordering: Ordering) -> LeafLabeledNetwork:
    ground = partition.ground()
    n = n_value(ground, partition)
    leaves = leaf_multiset(ground, partition)
    if not is_gapless(leaves):
        raise NotTreeGenerated("a", f"leaf multiset {leaves!r} is not gap-less")

    labels: list[int] = list(leaves.elements)
    children: list[list[int]] = [[] for _ in labels]
    free: dict[int, list[int]] = {}  # label -> in-degree-0 vertices, oldest first
    for i, x in enumerate(labels):
        free.setdefault(x, []).append(i)
    pending = partition.counts()

    while pending:
        fits = [
            b for b in pending
            if all(len(free.get(x, ())) >= m for x, m in b.counts().items())
        ]
        if not fits:
            raise NotTreeGenerated("b", f"no remaining block fits the available roots (label {n})")
        block = min(fits, key=lambda b: sort_key(ordering, b))
        n += 1
        for _ in range(pending.pop(block)):
            u = len(labels)
            labels.append(n)
            children.append([])
            for x in block:
                avail = free.get(x)
                if not avail:
                    raise NotTreeGenerated("c", f"block {block!r} cannot take a root labeled {x}")
                children[u].append(avail.pop(0))
            free.setdefault(n, []).append(u)

    roots = [v for vs in free.values() for v in vs]
    if len(roots) != 1:
        raise NotTreeGenerated("d", f"construction ended with {len(roots)} roots")
    ids = [f"v{i}" for i in range(len(labels))]
    net = RootedNetwork(
        frozenset(ids),
        frozenset((ids[u], ids[v]) for u, kids in enumerate(children) for v in kids),
        ids[roots[0]],
    )
    return LeafLabeledNetwork(net, {ids[v]: labels[v] for v in range(len(labels)) if not children[v]})


def decode(partition: MultisetPartition, ordering: Ordering = Ordering.ANTILEX) -> LeafLabeledNetwork:
    """Rebuild the leaf-labeled tree of a tree-generated partition.

    Blocks are consumed bottom-up: each round takes every copy of the
    least block (under ``ordering``) that fits inside the labels of the
    current roots, and hangs a fresh parent over matching roots.
    Raises :class:`NotTreeGenerated` when the partition has no tree.
    """
    tree = _build_tree(partition, ordering)
    again = encode(tree, ordering)
    if again.partition != partition:
        raise NotTreeGenerated("e", f"rebuilt tree encodes to {again.partition!r}")
    return tree


@dataclass
class TreeGeneration:
    ok: bool
    tree: LeafLabeledNetwork | None = None
    guard: str | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_tree_generated(partition: MultisetPartition, ordering: Ordering = Ordering.ANTILEX) -> TreeGeneration:
    try:
        tree = decode(partition, ordering)
    except NotTreeGenerated as exc:
        return TreeGeneration(False, None, exc.guard, exc.reason)
    return TreeGeneration(True, tree)


@dataclass
class ConditionReport:
    conditions: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self) -> bool:
        return self.ok

    def failed(self) -> list[str]:
        return [name for name, good in self.conditions.items() if not good]


@lru_cache(maxsize=None)
def _consistent(ordering: Ordering) -> bool:
    return is_labeling_consistent(ordering, 4, 3) is None


def check_closed_form(
    partition: MultisetPartition,
    ordering: Ordering = Ordering.ANTILEX,
    *,
    literal: bool = False,
) -> ConditionReport:
    """Closed-form test for tree-generated partitions.

    With ``F_1..F_k`` the distinct blocks in increasing order and ``n`` the
    leaf bound: (i) P gap-less; (ii) ``k = max(P) + 1 - n``; (iii)
    ``P(n+i)`` equals the multiplicity of ``F_i`` for ``i < k`` and is one
    less for ``i = k`` (the root label is not in P); (iv)
    ``max(F_i) <= n + i - 1``. ``literal=True`` drops the root correction
    from (ii) and (iii), which rejects genuine tree partitions.
    """
    if not _consistent(ordering):
        raise CodecError(f"ordering {ordering.value} is not labeling-consistent")
    ground = partition.ground()
    n = n_value(ground, partition)
    blocks = partition.sorted_distinct(ordering)
    k = len(blocks)
    report = ConditionReport()
    report.conditions["i"] = is_gapless(ground)
    if literal:
        report.conditions["ii"] = k == ground.max() - n
        report.conditions["iii"] = all(
            ground[n + i] == partition.multiplicity(blocks[i - 1]) for i in range(1, k + 1)
        )
    else:
        report.conditions["ii"] = k == ground.max() + 1 - n
        report.conditions["iii"] = all(
            ground[n + i] == partition.multiplicity(blocks[i - 1]) - (1 if i == k else 0)
            for i in range(1, k + 1)
        )
    report.conditions["iv"] = all(blocks[i - 1].max() <= n + i - 1 for i in range(1, k + 1))
    return report
