"""Bounded exhaustive enumeration of trees, networks and multiset
partitions, used as a brute-force oracle, plus Bell numbers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable, Iterator

from mulnet import kernels
from mulnet.codec import MultisetPartition
from mulnet.multiset import Multiset
from mulnet.network import LeafLabeledNetwork, RootedNetwork

MAX_NETWORK_VERTICES = 8
MAX_PARTITION_SIZE = 10


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationBounds:
    max_vertices: int
    max_leaf_label: int = 1
    require_gapless_leaves: bool = False
    phylogenetic_only: bool = False
    trees_only: bool = False
    injective_leaves: bool = False
    min_vertices: int = 1

    def __post_init__(self) -> None:
        if self.max_vertices < 1:
            raise BoundsError("max_vertices must be >= 1")
        if self.max_leaf_label < 1:
            raise BoundsError("max_leaf_label must be >= 1")

    def leaf_labels_ok(self, labels: list[int]) -> bool:
        if self.require_gapless_leaves and set(labels) != set(range(1, max(labels) + 1)):
            return False
        if self.injective_leaves and len(set(labels)) != len(labels):
            return False
        return True


# -- trees ---------------------------------------------------------------------

# A tree shape is either an int (a leaf with that label) or a tuple of child
# shapes sorted by code.


def _code(shape) -> str:
    if isinstance(shape, int):
        return str(shape)
    return "(" + " ".join(_code(c) for c in shape) + ")"


def _tree_pool(bounds: EnumerationBounds) -> list[list[tuple[str, object, frozenset]]]:
    """Per size, all trees as (code, shape, leaf-label set), each class once."""
    top = bounds.max_vertices
    L = bounds.max_leaf_label
    pool: list[list[tuple[str, object, frozenset]]] = [[] for _ in range(top + 1)]
    pool[1] = [(str(x), x, frozenset([x])) for x in range(1, L + 1)]
    flat: list[tuple[int, str, object, frozenset]] = [(1, *t) for t in pool[1]]
    for size in range(2, top + 1):
        found: dict[str, tuple[object, frozenset]] = {}

        def forests(budget: int, start: int, chosen: list[int], used: frozenset) -> Iterator[list[int]]:
            if budget == 0:
                yield chosen
                return
            for idx in range(start, len(flat)):
                s, _, _, labs = flat[idx]
                if s > budget:
                    continue
                if bounds.injective_leaves and labs & used:
                    continue
                yield from forests(budget - s, idx, chosen + [idx], used | labs)

        for kids in forests(size - 1, 0, [], frozenset()):
            parts = sorted((flat[i] for i in kids), key=lambda t: t[1])
            code = "(" + " ".join(p[1] for p in parts) + ")"
            if code not in found:
                found[code] = (tuple(p[2] for p in parts), frozenset().union(*(p[3] for p in parts)))
        pool[size] = [(c, shp, labs) for c, (shp, labs) in sorted(found.items())]
        flat.extend((size, *t) for t in pool[size])
    return pool


def _shape_to_network(shape) -> LeafLabeledNetwork:
    arcs: list[tuple[str, str]] = []
    labels: dict[str, int] = {}
    counter = [0]

    def visit(s) -> str:
        vid = str(counter[0])
        counter[0] += 1
        if isinstance(s, int):
            labels[vid] = s
        else:
            for c in s:
                arcs.append((vid, visit(c)))
        return vid

    root = visit(shape)
    net = RootedNetwork(frozenset(str(i) for i in range(counter[0])), frozenset(arcs), root)
    return LeafLabeledNetwork(net, labels)


def _shape_leaves(shape) -> list[int]:
    if isinstance(shape, int):
        return [shape]
    return [x for c in shape for x in _shape_leaves(c)]


def enumerate_trees(bounds: EnumerationBounds) -> Iterator[LeafLabeledNetwork]:
    """Each leaf-labeled tree within bounds exactly once, by (size, code)."""
    pool = _tree_pool(bounds)
    for size in range(bounds.min_vertices, bounds.max_vertices + 1):
        for _code_, shape, _labs in pool[size]:
            if bounds.leaf_labels_ok(_shape_leaves(shape)):
                yield _shape_to_network(shape)


# -- networks ------------------------------------------------------------------


def _network_from_form(form: tuple[tuple[int, ...], tuple[int, ...]]) -> LeafLabeledNetwork:
    colors, masks = form
    n = len(masks)
    ids = [str(i) for i in range(n)]
    arcs = [(ids[u], ids[w]) for u in range(n) for w in range(n) if masks[u] >> w & 1]
    heads = {w for _, w in arcs}
    root = next(v for v in ids if v not in heads)
    labels = {ids[v]: colors[v] for v in range(n) if masks[v] == 0}
    return LeafLabeledNetwork(RootedNetwork(frozenset(ids), frozenset(arcs), root), labels)


def network_forms(bounds: EnumerationBounds) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Canonical forms of all leaf-labeled networks within bounds, sorted."""
    if bounds.max_vertices > MAX_NETWORK_VERTICES:
        raise BoundsError(f"network enumeration is limited to {MAX_NETWORK_VERTICES} vertices")
    L = bounds.max_leaf_label
    out: list = []
    for size in range(bounds.min_vertices, bounds.max_vertices + 1):
        shapes: dict = {}
        for masks in kernels.rooted_dags(
            size,
            L if (bounds.phylogenetic_only or bounds.injective_leaves) else 0,
            bounds.phylogenetic_only,
            bounds.trees_only,
        ):
            key = kernels.canonical_form(size, masks, (0,) * size)
            if key not in shapes:
                shapes[key] = masks
        seen: set = set()
        for key in sorted(shapes):
            masks = shapes[key]
            leaves = [v for v in range(size) if masks[v] == 0]
            if bounds.phylogenetic_only:
                choices: Iterator = permutations(range(1, len(leaves) + 1))
            else:
                choices = product(range(1, L + 1), repeat=len(leaves))
            for labs in choices:
                labs = list(labs)
                if not bounds.leaf_labels_ok(labs):
                    continue
                colors = [0] * size
                for v, x in zip(leaves, labs):
                    colors[v] = x
                form = kernels.canonical_form(size, masks, colors)
                if form not in seen:
                    seen.add(form)
        out.extend((size, f) for f in seen)
    out.sort()
    return [f for _, f in out]


def enumerate_networks(bounds: EnumerationBounds) -> Iterator[LeafLabeledNetwork]:
    """Each leaf-labeled network within bounds once up to isomorphism.

    Shapes come from all topologically indexed rooted DAGs, are deduplicated
    by canonical form, then every admissible leaf labeling is applied and
    deduplicated again. Output order is by size, then canonical form.
    """
    for form in network_forms(bounds):
        yield _network_from_form(form)


def canonical_network_form(x: LeafLabeledNetwork):
    """Canonical form of any leaf-labeled network, for dedup and comparison."""
    net = x.network
    ids = list(net.ordered_vertices)
    index = {v: i for i, v in enumerate(ids)}
    masks = [0] * len(ids)
    for u, v in net.arcs:
        masks[index[u]] |= 1 << index[v]
    colors = [x.leaf_labels[v] if net.is_leaf(v) else 0 for v in ids]
    return kernels.canonical_form(len(ids), masks, colors)


# -- partitions ----------------------------------------------------------------


def _sub_vectors(avail: tuple[int, ...], bound: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Non-zero vectors c <= avail (pointwise) with c <= bound (lex), decreasing."""
    def rec(i: int, prefix: tuple[int, ...], tight: bool) -> Iterator[tuple[int, ...]]:
        if i == len(avail):
            if any(prefix):
                yield prefix
            return
        top = min(avail[i], bound[i]) if tight else avail[i]
        for c in range(top, -1, -1):
            yield from rec(i + 1, prefix + (c,), tight and c == bound[i])

    yield from rec(0, (), True)


def enumerate_partitions(p: Multiset) -> Iterator[MultisetPartition]:
    """Every partition of ``p`` into non-empty blocks, each exactly once."""
    if not p:
        raise BoundsError("cannot partition the empty multiset")
    if len(p) > MAX_PARTITION_SIZE:
        raise BoundsError(f"partition enumeration is limited to |P| <= {MAX_PARTITION_SIZE}")
    values = p.distinct()
    total = tuple(p[v] for v in values)

    def to_block(vec: tuple[int, ...]) -> Multiset:
        return Multiset.from_counts(dict(zip(values, vec)))

    def rec(avail: tuple[int, ...], bound: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
        if not any(avail):
            yield []
            return
        for vec in _sub_vectors(avail, bound):
            rest = tuple(a - c for a, c in zip(avail, vec))
            for tail in rec(rest, vec):
                yield [vec] + tail

    for vecs in rec(total, total):
        yield MultisetPartition(to_block(v) for v in vecs)


# -- counting ------------------------------------------------------------------


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    if n < 0 or n > 20:
        raise BoundsError("bell(n) is provided for 0 <= n <= 20")
    if n == 0:
        return 1
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


def count_semi_labeled_trees(n: int) -> int:
    """Trees with n+1 vertices whose leaves carry 1..l bijectively, l <= n."""
    if n < 1 or n > 5:
        raise BoundsError("count_semi_labeled_trees is provided for 1 <= n <= 5")
    bounds = EnumerationBounds(
        max_vertices=n + 1,
        max_leaf_label=n,
        require_gapless_leaves=True,
        injective_leaves=True,
        min_vertices=n + 1,
    )
    return sum(1 for _ in enumerate_trees(bounds))


def census(bounds: EnumerationBounds, predicate: Callable[[LeafLabeledNetwork], bool]) -> int:
    source = enumerate_trees(bounds) if bounds.trees_only else enumerate_networks(bounds)
    return sum(1 for x in source if predicate(x))
