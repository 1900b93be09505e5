from __future__ import annotations

import pytest

from conftest import load
from mulnet.enumeration import EnumerationBounds, enumerate_networks, enumerate_trees
from mulnet.folding import (
    FoldError,
    count_paths,
    fold,
    is_stable,
    is_stable_by_definition,
    path_of,
    unfold,
)
from mulnet.labeling import compute_full_labeling, full_labeling, is_labelable
from mulnet.multiset import Ordering
from mulnet.network import (
    FullyLabeledNetwork,
    LeafLabeledNetwork,
    NetworkError,
    is_isomorphic,
    is_tree,
)

ORDERINGS = list(Ordering)


def test_fold_ret_gives_n_ret():
    folded = fold(full_labeling(load("T_ret")))
    assert len(folded.network) == 8 and len(folded.network.arcs) == 8
    assert folded.leaf_labeled() == load("N_ret")
    assert folded.is_injective()


def test_fold_collapses_duplicate_arcs():
    x = LeafLabeledNetwork.build(
        [("r", "u"), ("r", "v"), ("u", "a"), ("u", "b"), ("v", "c"), ("v", "d")],
        {"a": 1, "b": 2, "c": 1, "d": 2},
    )
    phi = full_labeling(x)
    assert phi.labels["u"] == phi.labels["v"] == 3 and phi.labels["r"] == 4
    assert set(fold(phi).network.arcs) == {("3", "1"), ("3", "2"), ("4", "3")}


def test_fold_single_vertex():
    x = LeafLabeledNetwork.build([], {"a": 1}, root="a", vertices=["a"])
    folded = fold(full_labeling(x))
    assert folded.network.vertices == {"1"} and folded.labels == {"1": 1}


def test_fold_rejects_bad_inputs():
    with pytest.raises(FoldError):
        fold(full_labeling(load("N_ret")))
    t = full_labeling(load("T_cherry"))
    wrong = FullyLabeledNetwork(t.network, {**t.labels, "r": 7})
    with pytest.raises(FoldError):
        fold(wrong)
    assert fold(wrong, verify=False).network.root == "7"


def test_unfold_n_ret():
    u = unfold(full_labeling(load("N_ret")))
    assert len(u.network) == 11 and is_tree(u)
    assert is_isomorphic(u, full_labeling(load("T_ret")))
    assert path_of("8/6/5/3") == ["8", "6", "5", "3"]
    assert count_paths(load("N_ret").network) == 11


def test_unfold_diamond():
    phi = full_labeling(load("diamond"))
    assert phi.labels == {"l": 1, "z": 2, "x": 3, "y": 3, "r": 4}
    u = unfold(phi)
    assert len(u.network) == 7
    root = u.network.root
    assert [u.labels[c] for c in u.network.children(root)] == [3, 3]
    for c in u.network.children(root):
        (z,) = u.network.children(c)
        (leaf,) = u.network.children(z)
        assert (u.labels[z], u.labels[leaf]) == (2, 1)


def test_unfold_of_a_tree_is_a_copy():
    for t in enumerate_trees(EnumerationBounds(6, 2)):
        phi = full_labeling(t)
        assert is_isomorphic(unfold(phi), phi)


def test_unfold_path_cap():
    # a ladder of diamonds doubles the path count at each level
    arcs = []
    for i in range(12):
        arcs += [(f"a{i}", f"b{i}"), (f"a{i}", f"c{i}"), (f"b{i}", f"a{i + 1}"), (f"c{i}", f"a{i + 1}")]
    x = LeafLabeledNetwork.build(arcs, {"a12": 1})
    phi = full_labeling(x)
    with pytest.raises(NetworkError):
        unfold(phi, max_paths=1000)
    assert len(unfold(phi, max_paths=10**5).network) == count_paths(x.network)


def test_unfold_rejects_separator_in_ids():
    x = LeafLabeledNetwork.build([("r", "a/b")], {"a/b": 1})
    with pytest.raises(NetworkError):
        unfold(full_labeling(x))


def test_stability_examples():
    assert is_stable(load("N_ret")) and is_stable_by_definition(load("N_ret"))
    assert not is_stable(load("diamond")) and not is_stable_by_definition(load("diamond"))
    single = LeafLabeledNetwork.build([], {"a": 1}, root="a", vertices=["a"])
    assert is_stable(single) and is_stable_by_definition(single)


@pytest.mark.parametrize("ordering", ORDERINGS)
def test_unfolded_labeling_is_reproduced(ordering):
    for x in enumerate_networks(EnumerationBounds(5, 2)):
        u = unfold(full_labeling(x, ordering))
        again = full_labeling(u.leaf_labeled(), ordering)
        assert again.labels == u.labels


@pytest.mark.parametrize("ordering", ORDERINGS)
def test_traces_align_with_unfolding(ordering):
    for x in enumerate_networks(EnumerationBounds(5, 2)):
        phi, trace = compute_full_labeling(x, ordering)
        _, utrace = compute_full_labeling(unfold(phi).leaf_labeled(), ordering)
        assert [(s.label, s.multiset) for s in trace] == [(s.label, s.multiset) for s in utrace]


@pytest.mark.parametrize("ordering", ORDERINGS)
def test_stable_iff_labelable(ordering):
    for x in enumerate_networks(EnumerationBounds(5, 2)):
        lab = is_labelable(x)
        assert is_stable(x, ordering) == lab
        assert is_stable_by_definition(x, ordering) == lab


def test_refold_is_always_injective():
    for x in enumerate_networks(EnumerationBounds(5, 2)):
        assert fold(unfold(full_labeling(x))).is_injective()


def test_unfold_fold_recovers_unfoldings_of_stable_networks():
    for x in enumerate_networks(EnumerationBounds(5, 3)):
        if not is_labelable(x):
            continue
        t = unfold(full_labeling(x))
        assert is_isomorphic(unfold(fold(t)), t)
