"""Rooted networks (DAGs with a unique source), leaf and full labelings,
subnetworks, isomorphism, and the line-based network text format."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Union


class NetworkError(ValueError):
    """A network, or an operation's precondition on it, is invalid."""


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


_SPLIT = re.compile(r"(\d+)")


def id_key(vid: str) -> list:
    """Natural sort key, so ``v2`` precedes ``v10``."""
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in _SPLIT.split(vid) if t]


def sorted_ids(ids: Iterable[str]) -> list[str]:
    return sorted(ids, key=id_key)


@dataclass(frozen=True)
class RootedNetwork:
    vertices: frozenset[str]
    arcs: frozenset[tuple[str, str]]
    root: str

    @classmethod
    def build(
        cls,
        arcs: Iterable[tuple[object, object]],
        root: object | None = None,
        vertices: Iterable[object] = (),
    ) -> RootedNetwork:
        """Convenience constructor; ids are stringified and the root, when
        omitted, is the unique vertex without incoming arcs."""
        arc_set = frozenset((str(u), str(v)) for u, v in arcs)
        verts = {str(v) for v in vertices}
        for u, v in arc_set:
            verts.update((u, v))
        if root is None:
            heads = {v for _, v in arc_set}
            sources = sorted_ids(verts - heads)
            if len(sources) != 1:
                raise NetworkError(f"cannot infer root: sources {sources}")
            root = sources[0]
        verts.add(str(root))
        return cls(frozenset(verts), arc_set, str(root))

    @cached_property
    def _children(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            out.setdefault(u, []).append(v)
        return {u: tuple(sorted_ids(vs)) for u, vs in out.items()}

    @cached_property
    def _parents(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            out.setdefault(v, []).append(u)
        return {v: tuple(sorted_ids(us)) for v, us in out.items()}

    @cached_property
    def ordered_vertices(self) -> tuple[str, ...]:
        return tuple(sorted_ids(self.vertices))

    def children(self, v: str) -> tuple[str, ...]:
        return self._children[v]

    def parents(self, v: str) -> tuple[str, ...]:
        return self._parents[v]

    def indegree(self, v: str) -> int:
        return len(self._parents[v])

    def outdegree(self, v: str) -> int:
        return len(self._children[v])

    def is_leaf(self, v: str) -> bool:
        return not self._children[v]

    @cached_property
    def leaves(self) -> tuple[str, ...]:
        return tuple(v for v in self.ordered_vertices if not self._children[v])

    @cached_property
    def interior(self) -> tuple[str, ...]:
        return tuple(v for v in self.ordered_vertices if self._children[v])

    def __len__(self) -> int:
        return len(self.vertices)

    def reachable(self, u: str) -> set[str]:
        seen = {u}
        stack = [u]
        while stack:
            for w in self._children[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def topological_order(self) -> list[str]:
        """Parents before children; ties broken by vertex id."""
        indeg = {v: len(self._parents[v]) for v in self.vertices}
        ready = [v for v in self.ordered_vertices if indeg[v] == 0]
        out: list[str] = []
        while ready:
            v = ready.pop(0)
            out.append(v)
            for w in self._children[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        return out

    def relabeled(self, mapping: Mapping[str, str]) -> RootedNetwork:
        return RootedNetwork(
            frozenset(mapping[v] for v in self.vertices),
            frozenset((mapping[u], mapping[v]) for u, v in self.arcs),
            mapping[self.root],
        )


@dataclass(frozen=True, eq=True)
class LeafLabeledNetwork:
    network: RootedNetwork
    leaf_labels: Mapping[str, int] = field(hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "leaf_labels", {str(k): int(v) for k, v in self.leaf_labels.items()})

    @classmethod
    def build(
        cls,
        arcs: Iterable[tuple[object, object]],
        labels: Mapping[object, int],
        root: object | None = None,
        vertices: Iterable[object] = (),
    ) -> LeafLabeledNetwork:
        net = RootedNetwork.build(arcs, root, list(vertices) + list(labels))
        return cls(net, {str(k): v for k, v in labels.items()})

    def label(self, v: str) -> int:
        return self.leaf_labels[v]

    def leaf_multiset(self):
        from mulnet.multiset import Multiset

        return Multiset(self.leaf_labels[v] for v in self.network.leaves)

    def relabeled(self, mapping: Mapping[str, str]) -> LeafLabeledNetwork:
        return LeafLabeledNetwork(
            self.network.relabeled(mapping),
            {mapping[v]: x for v, x in self.leaf_labels.items()},
        )


@dataclass(frozen=True, eq=True)
class FullyLabeledNetwork:
    network: RootedNetwork
    labels: Mapping[str, int] = field(hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", {str(k): int(v) for k, v in self.labels.items()})

    def label(self, v: str) -> int:
        return self.labels[v]

    def leaf_labeled(self) -> LeafLabeledNetwork:
        """Forget the labels of interior vertices."""
        return LeafLabeledNetwork(self.network, {v: self.labels[v] for v in self.network.leaves})

    def is_injective(self) -> bool:
        return len(set(self.labels.values())) == len(self.labels)

    def relabeled(self, mapping: Mapping[str, str]) -> FullyLabeledNetwork:
        return FullyLabeledNetwork(
            self.network.relabeled(mapping),
            {mapping[v]: x for v, x in self.labels.items()},
        )


AnyNetwork = Union[RootedNetwork, LeafLabeledNetwork, FullyLabeledNetwork]


def _graph(x: AnyNetwork) -> RootedNetwork:
    return x if isinstance(x, RootedNetwork) else x.network


class Violation(NamedTuple):
    kind: str
    detail: str


def validate(x: AnyNetwork) -> list[Violation]:
    """All structural problems of a network (empty list when valid)."""
    net = _graph(x)
    found: list[Violation] = []
    if not net.vertices:
        return [Violation("empty", "network has no vertices")]
    if net.root not in net.vertices:
        found.append(Violation("unknown-root", f"root {net.root!r} is not a vertex"))
    for u, v in iter_arcs_sorted(net):
        for end in (u, v):
            if end not in net.vertices:
                found.append(Violation("dangling-arc", f"arc ({u}, {v}) uses unknown vertex {end!r}"))
    if found:
        return found
    sources = [v for v in net.ordered_vertices if net.indegree(v) == 0]
    if len(sources) > 1:
        found.append(Violation("multiple-sources", "vertices of in-degree 0: " + ", ".join(sources)))
    if net.indegree(net.root) != 0:
        found.append(Violation("root-not-source", f"root {net.root!r} has incoming arcs"))
    if len(net.topological_order()) != len(net.vertices):
        found.append(Violation("cycle", "the arcs contain a directed cycle"))
    if isinstance(x, LeafLabeledNetwork):
        leaves = set(net.leaves)
        keys = set(x.leaf_labels)
        for v in sorted_ids(leaves - keys):
            found.append(Violation("unlabeled-leaf", f"leaf {v!r} has no label"))
        for v in sorted_ids(keys - leaves):
            found.append(Violation("label-on-interior", f"{v!r} is not a leaf"))
        found.extend(_bad_values(x.leaf_labels))
    elif isinstance(x, FullyLabeledNetwork):
        for v in sorted_ids(net.vertices - set(x.labels)):
            found.append(Violation("unlabeled-vertex", f"vertex {v!r} has no label"))
        for v in sorted_ids(set(x.labels) - net.vertices):
            found.append(Violation("unknown-vertex", f"label for unknown vertex {v!r}"))
        found.extend(_bad_values(x.labels))
    return found


def _bad_values(labels: Mapping[str, int]) -> list[Violation]:
    return [
        Violation("bad-label", f"label {labels[v]} of {v!r} is not a positive integer")
        for v in sorted_ids(labels)
        if labels[v] < 1
    ]


def check(x: AnyNetwork) -> None:
    problems = validate(x)
    if problems:
        raise NetworkError("; ".join(f"{p.kind}: {p.detail}" for p in problems))


def subnetwork(x: LeafLabeledNetwork, u: str) -> LeafLabeledNetwork:
    """The leaf-labeled network induced by everything reachable from ``u``."""
    net = x.network
    if u not in net.vertices:
        raise NetworkError(f"unknown vertex {u!r}")
    keep = net.reachable(u)
    sub = RootedNetwork(
        frozenset(keep),
        frozenset(a for a in net.arcs if a[0] in keep),
        u,
    )
    return LeafLabeledNetwork(sub, {v: x.leaf_labels[v] for v in sub.leaves})


def is_tree(x: AnyNetwork) -> bool:
    net = _graph(x)
    return all(net.indegree(v) <= 1 for v in net.vertices)


def canonical_tree_code(t: LeafLabeledNetwork) -> str:
    """AHU-style code: a leaf is its label, an interior vertex is its
    children's codes, sorted as strings, space-joined inside parentheses."""
    net = t.network
    if not is_tree(net):
        raise NetworkError("canonical_tree_code needs a tree")
    codes: dict[str, str] = {}
    for v in reversed(net.topological_order()):
        kids = net.children(v)
        if kids:
            codes[v] = "(" + " ".join(sorted(codes[w] for w in kids)) + ")"
        else:
            codes[v] = str(t.leaf_labels[v])
    return codes[net.root]


def _vertex_colors(x: AnyNetwork) -> dict[str, object]:
    net = _graph(x)
    if isinstance(x, FullyLabeledNetwork):
        return dict(x.labels)
    if isinstance(x, LeafLabeledNetwork):
        return {v: x.leaf_labels.get(v, 0) if net.is_leaf(v) else 0 for v in net.vertices}
    return {v: 0 for v in net.vertices}


def find_isomorphism(a: AnyNetwork, b: AnyNetwork) -> dict[str, str] | None:
    """A label-preserving DAG isomorphism from ``a`` to ``b``, or None.

    Leaf-labeled inputs must agree on leaf labels, fully labeled inputs on
    every vertex label. Exact backtracking, pruned by (label, in-degree,
    out-degree) signatures; meant for small networks.
    """
    if type(a) is not type(b):
        raise TypeError("can only compare networks of the same kind")
    ga, gb = _graph(a), _graph(b)
    if len(ga.vertices) != len(gb.vertices) or len(ga.arcs) != len(gb.arcs):
        return None
    ca, cb = _vertex_colors(a), _vertex_colors(b)

    def sig(g: RootedNetwork, c: Mapping[str, object], v: str) -> tuple:
        return (c[v], g.indegree(v), g.outdegree(v))

    by_sig: dict[tuple, list[str]] = {}
    for v in gb.ordered_vertices:
        by_sig.setdefault(sig(gb, cb, v), []).append(v)
    sig_a: dict[tuple, int] = {}
    for v in ga.vertices:
        s = sig(ga, ca, v)
        sig_a[s] = sig_a.get(s, 0) + 1
    if sig_a != {s: len(vs) for s, vs in by_sig.items()}:
        return None

    # visit a's vertices root-first so most candidates are already constrained
    order: list[str] = []
    seen = {ga.root}
    queue = [ga.root]
    while queue:
        v = queue.pop(0)
        order.append(v)
        for w in ga.children(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    arcs_b = gb.arcs
    mapping: dict[str, str] = {}
    inverse: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, image: str) -> bool:
        for p in ga.parents(v):
            if p in mapping and (mapping[p], image) not in arcs_b:
                return False
        for w in ga.children(v):
            if w in mapping and (image, mapping[w]) not in arcs_b:
                return False
        # and no extra arcs towards already-mapped images
        for p in gb.parents(image):
            if p in used and (inverse[p], v) not in ga.arcs:
                return False
        for w in gb.children(image):
            if w in used and (v, inverse[w]) not in ga.arcs:
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for image in by_sig[sig(ga, ca, v)]:
            if image in used or not consistent(v, image):
                continue
            mapping[v] = image
            inverse[image] = v
            used.add(image)
            if extend(i + 1):
                return True
            del mapping[v]
            del inverse[image]
            used.discard(image)
        return False

    return dict(mapping) if extend(0) else None


def is_isomorphic(a: AnyNetwork, b: AnyNetwork) -> bool:
    return find_isomorphism(a, b) is not None


# -- text format -------------------------------------------------------------


@dataclass
class NetworkDocument:
    """Raw content of a network file before choosing how to read its labels."""

    network: RootedNetwork
    leaf_labels: dict[str, int]
    labels: dict[str, int]
    label_lines: dict[str, int]


def _positive(token: str, line: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(line, f"expected a positive integer, got {token!r}") from None
    if value < 1:
        raise ParseError(line, f"expected a positive integer, got {value}")
    return value


def parse_network(text: str) -> NetworkDocument:
    vertices: dict[str, int] = {}
    arcs: dict[tuple[str, str], int] = {}
    leaf: dict[str, int] = {}
    full: dict[str, int] = {}
    where: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "vertex" and len(args) == 1:
            vertices.setdefault(args[0], lineno)
        elif kind == "arc" and len(args) == 2:
            arc = (args[0], args[1])
            if arc in arcs:
                raise ParseError(lineno, f"parallel arc {args[0]} -> {args[1]} (first on line {arcs[arc]})")
            if args[0] == args[1]:
                raise ParseError(lineno, f"self-loop on {args[0]}")
            arcs[arc] = lineno
            for v in arc:
                vertices.setdefault(v, lineno)
        elif kind in ("leaf", "label") and len(args) == 2:
            target = leaf if kind == "leaf" else full
            if args[0] in target:
                raise ParseError(lineno, f"duplicate {kind} for {args[0]}")
            target[args[0]] = _positive(args[1], lineno)
            where[args[0]] = lineno
            vertices.setdefault(args[0], lineno)
        else:
            raise ParseError(lineno, f"cannot parse {raw.strip()!r}")
    if not vertices:
        raise ParseError(0, "no vertices")
    heads = {v for _, v in arcs}
    sources = [v for v in sorted_ids(vertices) if v not in heads]
    if len(sources) != 1:
        raise ParseError(0, f"expected exactly one vertex of in-degree 0, found {len(sources)}: {sources}")
    net = RootedNetwork(frozenset(vertices), frozenset(arcs), sources[0])
    if len(net.topological_order()) != len(net.vertices):
        raise ParseError(0, "the arcs contain a directed cycle")
    for v, lab in leaf.items():
        if not net.is_leaf(v):
            raise ParseError(where[v], f"'leaf' given for interior vertex {v}")
    return NetworkDocument(net, leaf, full, where)


def read_leaf_labeled(text: str) -> LeafLabeledNetwork:
    """Leaf labels come from ``leaf`` lines, or from ``label`` lines of leaves
    when the file is fully labeled."""
    doc = parse_network(text)
    net = doc.network
    labels = dict(doc.leaf_labels)
    for v in net.leaves:
        if v not in labels and v in doc.labels:
            labels[v] = doc.labels[v]
    for v in net.leaves:
        if v not in labels:
            raise ParseError(0, f"leaf {v} has no label")
    for v, lab in doc.labels.items():
        if v in doc.leaf_labels and doc.leaf_labels[v] != lab:
            raise ParseError(doc.label_lines[v], f"'leaf' and 'label' disagree on {v}")
    return LeafLabeledNetwork(net, labels)


def read_fully_labeled(text: str) -> FullyLabeledNetwork:
    doc = parse_network(text)
    labels = dict(doc.labels)
    for v, lab in doc.leaf_labels.items():
        labels.setdefault(v, lab)
    missing = [v for v in doc.network.ordered_vertices if v not in labels]
    if missing:
        raise ParseError(0, "unlabeled vertices: " + ", ".join(missing))
    return FullyLabeledNetwork(doc.network, labels)


def format_network(x: AnyNetwork, comments: Iterable[str] = ()) -> str:
    """Deterministic text rendering: vertices, arcs, then labels, by id."""
    net = _graph(x)
    lines = [f"# {c}" for c in comments]
    lines.extend(f"vertex {v}" for v in net.ordered_vertices)
    lines.extend(f"arc {u} {v}" for u, v in iter_arcs_sorted(net))
    if isinstance(x, LeafLabeledNetwork):
        lines.extend(f"leaf {v} {x.leaf_labels[v]}" for v in net.leaves)
    elif isinstance(x, FullyLabeledNetwork):
        lines.extend(f"label {v} {x.labels[v]}" for v in net.ordered_vertices)
    return "\n".join(lines) + "\n"


def iter_arcs_sorted(net: RootedNetwork) -> Iterator[tuple[str, str]]:
    return iter(sorted(net.arcs, key=lambda a: (id_key(a[0]), id_key(a[1]))))
