"""Pure-Python kernels; the compiled ``_ckernels`` module mirrors this API exactly.

Graphs are given as vertex count ``n`` plus one child bitmask per vertex
(bit ``j`` of ``children[i]`` set iff there is an arc ``i -> j``).
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, Sequence

BACKEND = "python"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _ranks(keys: Sequence) -> list[int]:
    table = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def refine(n: int, children: Sequence[int], colors: Sequence[int]) -> list[int]:
    """Isomorphism-invariant vertex ranks from iterated degree refinement.

    Start from (color, in-degree, out-degree); each round appends, for every
    current rank, how many children and how many parents carry it.
    """
    parents = [0] * n
    for v in range(n):
        for w in _bits(children[v]):
            parents[w] |= 1 << v
    rank = _ranks(
        [(colors[v], bin(parents[v]).count("1"), bin(children[v]).count("1")) for v in range(n)]
    )
    classes = max(rank) + 1 if n else 0
    while True:
        sigs = []
        for v in range(n):
            down = [0] * classes
            up = [0] * classes
            for w in _bits(children[v]):
                down[rank[w]] += 1
            for w in _bits(parents[v]):
                up[rank[w]] += 1
            sigs.append((rank[v], *down, *up))
        new = _ranks(sigs)
        new_classes = max(new) + 1 if n else 0
        if new_classes == classes:
            return rank
        rank, classes = new, new_classes


def canonical_form(
    n: int, children: Sequence[int], colors: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical (colors, child masks) of a vertex-colored digraph.

    The certificate is the lexicographically least relabeled child-mask
    tuple over all vertex orders that list refinement cells in rank order.
    Two inputs are isomorphic (color-preserving) iff certificates agree.
    """
    rank = refine(n, children, colors)
    cells: list[list[int]] = [[] for _ in range(max(rank) + 1 if n else 0)]
    for v in range(n):
        cells[rank[v]].append(v)
    order = [v for cell in cells for v in cell]
    ordered_colors = tuple(colors[v] for v in order)

    child_lists = [list(_bits(children[v])) for v in range(n)]
    pos = [0] * n
    best: tuple[int, ...] | None = None

    def assign(ci: int, offset: int) -> None:
        nonlocal best
        if ci == len(cells):
            masks = [0] * n
            for v in range(n):
                m = 0
                for w in child_lists[v]:
                    m |= 1 << pos[w]
                masks[pos[v]] = m
            cert = tuple(masks)
            if best is None or cert < best:
                best = cert
            return
        cell = cells[ci]
        for perm in permutations(cell):
            for i, v in enumerate(perm):
                pos[v] = offset + i
            assign(ci + 1, offset + len(cell))

    assign(0, 0)
    return ordered_colors, best if best is not None else ()


def rooted_dags(
    n: int,
    max_leaves: int = 0,
    leaf_indegree_one: bool = False,
    trees_only: bool = False,
) -> Iterator[tuple[int, ...]]:
    """Every rooted DAG on vertices ``0..n-1`` whose arcs go from lower to
    higher index, with vertex 0 as the only source.

    Each isomorphism class appears at least once (possibly many times).
    ``max_leaves`` of 0 means unbounded.
    """
    if n < 1:
        return
    children = [0] * n
    indeg = [0] * n

    def accept() -> bool:
        leaves = 0
        for v in range(n):
            if children[v] == 0:
                leaves += 1
                if leaf_indegree_one and indeg[v] != 1:
                    return False
        return not max_leaves or leaves <= max_leaves

    def extend(j: int) -> Iterator[tuple[int, ...]]:
        if j == n:
            if accept():
                yield tuple(children)
            return
        bit = 1 << j
        if trees_only:
            choices: Iterator[int] = (1 << i for i in range(j))
        else:
            choices = iter(range(1, 1 << j))
        for pmask in choices:
            parents = list(_bits(pmask))
            for p in parents:
                children[p] |= bit
            indeg[j] = len(parents)
            yield from extend(j + 1)
            for p in parents:
                children[p] &= ~bit

    yield from extend(1)
