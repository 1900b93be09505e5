"""Enumeration counts frozen with the bounds that produced them.

Several rows are cross-checked against independent oracles elsewhere
(Euler transform for trees, brute-force arc subsets for 4-vertex
networks, Bell numbers for semi-labeled trees)."""

from __future__ import annotations

import csv
from pathlib import Path

import pytest

from mulnet.codec import is_tree_generated
from mulnet.enumeration import (
    EnumerationBounds,
    count_semi_labeled_trees,
    enumerate_networks,
    enumerate_partitions,
    enumerate_trees,
)
from mulnet.labeling import is_labelable
from mulnet.multiset import Ordering, bounded_multisets
from mulnet.phylo import is_non_degenerate, is_tree_child

GOLDEN = Path(__file__).parent / "golden" / "counts.csv"


def _trees(v, l, gapless=False):
    return sum(1 for _ in enumerate_trees(EnumerationBounds(v, l, require_gapless_leaves=gapless)))


def _networks(v, l):
    return sum(1 for _ in enumerate_networks(EnumerationBounds(v, l)))


def _phylo(v, l, pred=lambda x: True):
    return sum(1 for x in enumerate_networks(EnumerationBounds(v, l, phylogenetic_only=True)) if pred(x))


def _tree_generated(v, s, order):
    o = Ordering.from_name(order)
    return sum(1 for g in bounded_multisets(v, s) for p in enumerate_partitions(g) if is_tree_generated(p, o))


def _partitions(v, s):
    return sum(1 for g in bounded_multisets(v, s) for _ in enumerate_partitions(g))


QUANTITIES = {
    "trees": lambda b: _trees(b["vertices"], b["labels"]),
    "gapless-trees": lambda b: _trees(b["vertices"], b["labels"], True),
    "networks": lambda b: _networks(b["vertices"], b["labels"]),
    "phylogenetic": lambda b: _phylo(b["vertices"], b["labels"]),
    "stable-phylogenetic": lambda b: _phylo(b["vertices"], b["labels"], is_labelable),
    "tree-child-phylogenetic": lambda b: _phylo(b["vertices"], b["labels"], is_tree_child),
    "non-degenerate-stable-phylogenetic": lambda b: _phylo(
        b["vertices"], b["labels"], lambda x: is_labelable(x) and is_non_degenerate(x)
    ),
    "partitions": lambda b: _partitions(b["values"], b["size"]),
    "tree-generated": lambda b: _tree_generated(b["values"], b["size"], b["order"]),
    "semi-labeled-trees": lambda b: count_semi_labeled_trees(b["n"]),
}


def parse_bounds(text: str) -> dict:
    out = {}
    for item in text.split(";"):
        key, value = item.split("=")
        out[key] = value if key == "order" else int(value)
    return out


def rows():
    with GOLDEN.open(newline="") as fh:
        return [(r["quantity"], r["bounds"], int(r["count"])) for r in csv.DictReader(fh)]


@pytest.mark.parametrize("quantity,bounds,count", rows(), ids=lambda v: str(v))
def test_golden_count(quantity, bounds, count):
    assert QUANTITIES[quantity](parse_bounds(bounds)) == count
