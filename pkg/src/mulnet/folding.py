"""Folding labeled trees into networks, unfolding networks into trees,
and stability."""

from __future__ import annotations

from mulnet.labeling import compute_full_labeling, is_labelable
from mulnet.multiset import Ordering
from mulnet.network import (
    FullyLabeledNetwork,
    LeafLabeledNetwork,
    NetworkError,
    RootedNetwork,
    is_isomorphic,
    is_tree,
)

DEFAULT_MAX_PATHS = 10**5
PATH_SEP = "/"


class FoldError(NetworkError):
    pass


def fold(
    t: FullyLabeledNetwork,
    ordering: Ordering = Ordering.ANTILEX,
    *,
    verify: bool = True,
) -> FullyLabeledNetwork:
    """Merge all vertices sharing a label; the result is labeled by identity.

    The labeling must be the one the labeling algorithm produces under
    ``ordering``; with ``verify`` this is re-computed and compared.
    """
    net = t.network
    if not is_tree(net):
        raise FoldError("fold needs a tree")
    if verify:
        expected, _ = compute_full_labeling(t.leaf_labeled(), ordering)
        if expected.labels != t.labels:
            raise FoldError(f"labels are not the {ordering.value} labeling of the tree")
    lab = t.labels
    folded = RootedNetwork(
        frozenset(str(lab[v]) for v in net.vertices),
        frozenset((str(lab[u]), str(lab[v])) for u, v in net.arcs),
        str(lab[net.root]),
    )
    return FullyLabeledNetwork(folded, {v: int(v) for v in folded.vertices})


def count_paths(net: RootedNetwork) -> int:
    """Number of directed paths starting at the root (including the trivial one)."""
    ways = {v: 0 for v in net.vertices}
    ways[net.root] = 1
    for v in net.topological_order():
        for w in net.children(v):
            ways[w] += ways[v]
    return sum(ways.values())


def unfold(x: FullyLabeledNetwork, *, max_paths: int = DEFAULT_MAX_PATHS) -> FullyLabeledNetwork:
    """Tree of root paths; a path is labeled like its last vertex.

    Vertex ids of the result are the paths, vertex ids joined by ``/``.
    """
    net = x.network
    if any(PATH_SEP in v for v in net.vertices):
        raise NetworkError(f"vertex ids may not contain {PATH_SEP!r} when unfolding")
    total = count_paths(net)
    if total > max_paths:
        raise NetworkError(f"unfolding has {total} vertices, above the cap of {max_paths}")
    vertices: list[str] = []
    arcs: list[tuple[str, str]] = []
    labels: dict[str, int] = {}
    stack = [(net.root, net.root)]
    while stack:
        pid, last = stack.pop()
        vertices.append(pid)
        labels[pid] = x.labels[last]
        for w in reversed(net.children(last)):
            child = pid + PATH_SEP + w
            arcs.append((pid, child))
            stack.append((child, w))
    tree = RootedNetwork(frozenset(vertices), frozenset(arcs), net.root)
    return FullyLabeledNetwork(tree, labels)


def path_of(vertex_id: str) -> list[str]:
    return vertex_id.split(PATH_SEP)


def is_stable(x: LeafLabeledNetwork, ordering: Ordering = Ordering.ANTILEX) -> bool:
    """Stable networks are exactly the labelable ones."""
    return is_labelable(x)


def is_stable_by_definition(x: LeafLabeledNetwork, ordering: Ordering = Ordering.ANTILEX) -> bool:
    """Compare the labeled network with the folding of its unfolding."""
    phi, _ = compute_full_labeling(x, ordering)
    refolded = fold(unfold(phi), ordering)
    return is_isomorphic(phi, refolded)
