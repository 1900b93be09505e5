from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load
from mulnet.enumeration import EnumerationBounds, enumerate_networks, enumerate_trees
from mulnet.network import (
    FullyLabeledNetwork,
    LeafLabeledNetwork,
    NetworkError,
    ParseError,
    RootedNetwork,
    canonical_tree_code,
    check,
    find_isomorphism,
    format_network,
    id_key,
    is_isomorphic,
    is_tree,
    parse_network,
    read_fully_labeled,
    read_leaf_labeled,
    subnetwork,
    validate,
)

L = LeafLabeledNetwork.build


def kinds(x):
    return [v.kind for v in validate(x)]


def permuted(x: LeafLabeledNetwork, seed: int) -> LeafLabeledNetwork:
    ids = list(x.network.ordered_vertices)
    fresh = [f"q{i}" for i in range(len(ids))]
    random.Random(seed).shuffle(fresh)
    return x.relabeled(dict(zip(ids, fresh)))


def test_fixtures_are_valid(nets):
    for name, x in nets.items():
        assert validate(x) == [], name


def test_validate_reports_each_kind():
    cyc = RootedNetwork(frozenset("abc"), frozenset({("a", "b"), ("b", "c"), ("c", "b")}), "a")
    assert "cycle" in kinds(cyc)
    two = RootedNetwork(frozenset("abc"), frozenset({("a", "c"), ("b", "c")}), "a")
    assert kinds(two) == ["multiple-sources"]
    dangling = RootedNetwork(frozenset("ab"), frozenset({("a", "z")}), "a")
    assert kinds(dangling) == ["dangling-arc"]
    net = RootedNetwork(frozenset("ab"), frozenset({("a", "b")}), "a")
    assert kinds(LeafLabeledNetwork(net, {})) == ["unlabeled-leaf"]
    assert kinds(LeafLabeledNetwork(net, {"a": 1, "b": 1})) == ["label-on-interior"]
    assert kinds(FullyLabeledNetwork(net, {"b": 1})) == ["unlabeled-vertex"]
    with pytest.raises(NetworkError):
        check(cyc)


def test_id_key_is_natural():
    assert sorted(["10", "9", "a2", "a10"], key=id_key) == ["9", "10", "a2", "a10"]


def test_subnetwork_of_ret_at_u():
    sub = subnetwork(load("T_ret"), "u")
    assert len(sub.network) == 5
    assert sorted(sub.leaf_labels.values()) == [1, 3, 4]
    assert sub.network.root == "u" and is_tree(sub)


def test_subnetwork_of_leaf_and_unknown():
    t = load("T_cherry")
    assert len(subnetwork(t, "l1").network) == 1
    with pytest.raises(NetworkError):
        subnetwork(t, "nope")


def test_is_tree(nets):
    assert is_tree(nets["T_ret"]) and is_tree(nets["T_cherry"])
    assert not is_tree(nets["diamond"]) and not is_tree(nets["N_ret"])


def test_canonical_codes(nets):
    a, b = nets["T_fig4a"], nets["T_fig4b"]
    assert canonical_tree_code(a) == "((1 2) 1 1)"
    assert canonical_tree_code(b) == "((1 1 3) 1)"
    assert canonical_tree_code(permuted(a, 3)) == canonical_tree_code(a)
    with pytest.raises(NetworkError):
        canonical_tree_code(nets["N_ret"])


def test_isomorphism_examples(nets):
    assert not is_isomorphic(nets["T_fig4a"], nets["T_fig4b"])
    assert is_isomorphic(nets["N_ret"], permuted(nets["N_ret"], 1))
    # labels matter
    relabeled = LeafLabeledNetwork(nets["N_ret"].network, {**nets["N_ret"].leaf_labels, "1": 2, "2": 1})
    assert is_isomorphic(nets["N_ret"], relabeled)  # swaps the symmetric sides
    other = LeafLabeledNetwork(nets["N_ret"].network, {**nets["N_ret"].leaf_labels, "1": 3, "3": 1})
    assert not is_isomorphic(nets["N_ret"], other)


def test_isomorphism_mapping_is_a_bijection(nets):
    x = nets["N_nd"]
    y = permuted(x, 7)
    f = find_isomorphism(x, y)
    assert f is not None and sorted(f.values()) == sorted(y.network.vertices)
    assert {(f[u], f[v]) for u, v in x.network.arcs} == set(y.network.arcs)


def test_mixed_types_rejected(nets):
    x = nets["T_cherry"]
    with pytest.raises(TypeError):
        is_isomorphic(x, x.network)


def test_code_equality_iff_isomorphic_small_trees():
    trees = list(enumerate_trees(EnumerationBounds(5, 2)))
    codes = [canonical_tree_code(t) for t in trees]
    assert len(set(codes)) == len(codes)
    for i, a in enumerate(trees):
        for j in range(i, len(trees)):
            assert is_isomorphic(a, trees[j]) == (i == j)


def test_enumerated_trees_up_to_six_are_pairwise_distinct():
    trees = list(enumerate_trees(EnumerationBounds(6, 2)))
    by_code = {}
    for t in trees:
        by_code.setdefault(canonical_tree_code(t), t)
    assert len(by_code) == len(trees)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_isomorphism_invariant_under_id_permutation(index, seed):
    pool = list(enumerate_networks(EnumerationBounds(5, 2)))
    x = pool[index % len(pool)]
    y = permuted(x, seed)
    assert is_isomorphic(x, y)
    if is_tree(x):
        assert canonical_tree_code(x) == canonical_tree_code(y)


# -- text format ---------------------------------------------------------------


def test_format_parse_round_trip(nets):
    for x in nets.values():
        text = format_network(x)
        y = read_leaf_labeled(text)
        assert y == x
        assert format_network(y) == text


def test_parse_order_insensitive():
    a = "arc r a\narc r b\nleaf a 1\nleaf b 2\n"
    b = "leaf b 2\n# comment\narc r b\nleaf a 1\n\narc r a\n"
    assert read_leaf_labeled(a) == read_leaf_labeled(b)


@pytest.mark.parametrize(
    "text,line",
    [
        ("arc a b\narc a b\nleaf b 1\n", 2),
        ("arc a a\n", 1),
        ("arc a b\nleaf b 0\n", 2),
        ("arc a b\nleaf a 1\nleaf b 1\n", 2),
        ("arc a b\nfrobnicate\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_network(text)
    assert info.value.line == line


def test_parse_structural_errors():
    with pytest.raises(ParseError):
        parse_network("arc a c\narc b c\nleaf c 1\n")  # two sources
    with pytest.raises(ParseError):
        parse_network("arc r a\narc a b\narc b a\n")  # cycle
    with pytest.raises(ParseError):
        read_leaf_labeled("arc a b\n")  # unlabeled leaf
    with pytest.raises(ParseError):
        parse_network("# nothing\n")


def test_fully_labeled_reading():
    text = "arc r a\nlabel r 2\nlabel a 1\n"
    phi = read_fully_labeled(text)
    assert phi.labels == {"r": 2, "a": 1}
    assert read_leaf_labeled(text).leaf_labels == {"a": 1}
    with pytest.raises(ParseError):
        read_fully_labeled("arc r a\nleaf a 1\n")
