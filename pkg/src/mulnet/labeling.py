"""Extending a leaf labeling to all vertices, and the labelability test."""

from __future__ import annotations

from typing import NamedTuple

from mulnet.multiset import Multiset, Ordering, sort_key
from mulnet.network import FullyLabeledNetwork, LeafLabeledNetwork, NetworkError, sorted_ids


class TraceStep(NamedTuple):
    """One round of the labeling loop: the fresh label, the minimal
    child-label multiset, and the vertices that received the label."""

    label: int
    multiset: Multiset
    vertices: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)


def compute_full_labeling(
    x: LeafLabeledNetwork, ordering: Ordering = Ordering.ANTILEX
) -> tuple[FullyLabeledNetwork, list[TraceStep]]:
    """Label interior vertices round by round.

    Each round collects the unlabeled vertices whose children are all
    labeled, keeps those whose child-label multiset is minimal under
    ``ordering``, and gives all of them the smallest positive integer not
    yet used as a label.
    """
    net = x.network
    phi: dict[str, int] = {v: x.leaf_labels[v] for v in net.leaves}
    used = set(phi.values())
    # number of still unlabeled children per unlabeled vertex
    waiting = {v: sum(not net.is_leaf(w) for w in net.children(v)) for v in net.interior}
    ready = {v for v, c in waiting.items() if c == 0}
    trace: list[TraceStep] = []
    next_free = 1
    remaining = len(waiting)
    while remaining:
        if not ready:
            raise NetworkError("labeling stalled; the network is not a valid DAG")
        child_sets = {v: Multiset(phi[w] for w in net.children(v)) for v in ready}
        keys = {v: sort_key(ordering, m) for v, m in child_sets.items()}
        least = min(keys.values())
        chosen = sorted_ids(v for v in ready if keys[v] == least)
        while next_free in used:
            next_free += 1
        k = next_free
        used.add(k)
        for v in chosen:
            phi[v] = k
            ready.discard(v)
            for p in net.parents(v):
                waiting[p] -= 1
                if waiting[p] == 0:
                    ready.add(p)
        remaining -= len(chosen)
        trace.append(TraceStep(k, child_sets[chosen[0]], tuple(chosen)))
    return FullyLabeledNetwork(net, phi), trace


def full_labeling(x: LeafLabeledNetwork, ordering: Ordering = Ordering.ANTILEX) -> FullyLabeledNetwork:
    return compute_full_labeling(x, ordering)[0]


def child_label_multiset(x: FullyLabeledNetwork, u: str) -> Multiset:
    net = x.network
    if u not in net.vertices:
        raise NetworkError(f"unknown vertex {u!r}")
    if net.is_leaf(u):
        raise NetworkError(f"{u!r} is a leaf and has no children")
    return Multiset(x.labels[w] for w in net.children(u))


def is_labelable(x: LeafLabeledNetwork) -> bool:
    """Injective leaf labels and pairwise distinct child sets of interior
    vertices; equivalent to the full labeling being injective."""
    net = x.network
    labels = [x.leaf_labels[v] for v in net.leaves]
    if len(set(labels)) != len(labels):
        return False
    child_sets = [frozenset(net.children(v)) for v in net.interior]
    return len(set(child_sets)) == len(child_sets)
