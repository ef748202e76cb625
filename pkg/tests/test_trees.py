import pytest

from virlab.errors import OrderRangeError, VirlabError
from virlab.graphs import Edge
from virlab.trees import (
    TreeClass,
    admissible_edges,
    bfs_frame,
    canonical_frame,
    canonical_labeling,
    class_consistency_oracle,
    class_of_frame,
    cost_accounting,
    count_tr,
    count_tr0,
    enumerate_tr,
    enumerate_tr0,
    labeled_trees,
    multiplicity,
    partition_oracle,
    prufer_to_edges,
    satisfies_a_conditions,
    tree_sum,
    tree_sum_set,
)

TR_COUNTS = [1, 2, 5, 14, 44, 157, 634, 2852, 14047]
TR0_COUNTS = [1, 1, 2, 5, 15, 55, 239, 1169, 6213]


@pytest.mark.parametrize("n,expected", zip(range(2, 11), TR_COUNTS))
def test_tr_counts(n, expected):
    assert count_tr(n) == expected
    assert len(enumerate_tr(n)) == expected


@pytest.mark.parametrize("n,expected", zip(range(2, 11), TR0_COUNTS))
def test_tr0_counts(n, expected):
    assert count_tr0(n) == expected
    assert len(enumerate_tr0(n)) == expected


@pytest.mark.parametrize("n", range(2, 11))
def test_multiplicities_sum_to_cayley(n):
    assert sum(multiplicity(t) for t in enumerate_tr(n)) == n ** (n - 2)


def test_enumeration_is_duplicate_free():
    classes = enumerate_tr(7)
    assert len(set(classes)) == len(classes)
    assert set(enumerate_tr0(7)) <= set(classes)


def test_star_and_chain():
    star, chain = TreeClass.star(5), TreeClass.chain(5)
    assert multiplicity(star) == 1
    assert multiplicity(chain) == 24
    assert len(admissible_edges(star)) == 6
    assert admissible_edges(chain) == ()
    assert canonical_labeling(chain) == (Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(4, 5))


def test_admissible_edges_example():
    # root 1; layer (2, 3); 4 under 3
    t = TreeClass(n=4, layers=(2, 1), parents=(), composition=(0, 1))
    assert canonical_labeling(t) == (Edge(1, 2), Edge(1, 3), Edge(3, 4))
    assert admissible_edges(t) == (Edge(2, 3),)
    # 4 under 2: vertex 3 outranks the parent
    u = TreeClass(n=4, layers=(2, 1), parents=(), composition=(1, 0))
    assert admissible_edges(u) == (Edge(2, 3), Edge(3, 4))


def test_invalid_class():
    with pytest.raises(VirlabError):
        TreeClass(n=4, layers=(2, 2), parents=(), composition=(2, 0))


def test_a_conditions():
    assert satisfies_a_conditions(TreeClass.star(6))
    assert not satisfies_a_conditions(TreeClass.chain(4))
    # every child on the highest-ranked vertex of layer 1
    assert not satisfies_a_conditions(TreeClass(n=5, layers=(2, 2), parents=(), composition=(0, 2)))
    assert satisfies_a_conditions(TreeClass(n=5, layers=(2, 2), parents=(), composition=(1, 1)))
    assert satisfies_a_conditions(TreeClass(n=5, layers=(2, 2), parents=(), composition=(2, 0)))


def test_order_range():
    with pytest.raises(OrderRangeError):
        enumerate_tr(13)


def test_prufer_decoding():
    assert sorted(prufer_to_edges([4, 4], 4)) == [(1, 4), (2, 4), (3, 4)]
    assert sum(1 for _ in labeled_trees(5)) == 125


def test_bfs_frame_recovers_tree():
    edges = [(1, 3), (3, 2), (3, 4)]
    frame = bfs_frame(edges, 4)
    assert frame.layer_labels == ((1,), (3,), (2, 4))
    assert set(frame.tree_edges()) == {Edge(*e) for e in edges}


def test_bfs_frame_rejects_disconnected():
    with pytest.raises(VirlabError):
        bfs_frame([(1, 2)], 3)


def test_class_of_canonical_frame():
    for t in enumerate_tr(6):
        assert class_of_frame(canonical_frame(t)) == t


@pytest.mark.parametrize("n", range(2, 6))
def test_partition_oracle(n):
    report = partition_oracle(n)
    assert report["connected"] == {2: 1, 3: 4, 4: 38, 5: 728}[n]
    assert report["covered"] == report["connected"]
    assert report["misses"] == report["double_covers"] == report["strays"] == 0


@pytest.mark.parametrize("n", range(2, 6))
def test_class_consistency(n):
    report = class_consistency_oracle(n)
    assert report["classes"] == count_tr(n)
    assert report["unknown_classes"] == report["missing_classes"] == 0
    assert report["size_mismatches"] == report["label_mismatches"] == 0


def test_tree_sum_prefactor_and_length():
    s = tree_sum(4)
    assert s.prefactor == pytest.approx(1 / 24)
    assert len(s.entries) == 5
    assert s.total_multiplicity == 16
    assert len(tree_sum_set(5, "a-subset")) == 4


def test_cost_accounting_matches_edge_counts():
    for n in (4, 6):
        rows = cost_accounting(n)
        assert all(r["pair_evals"] == n - 1 + r["boltzmann_evals"] for r in rows)
        total = sum(r["pair_evals"] for r in rows)
        cr2 = sum(label.edge_count for label, _ in tree_sum(n).combination.entries)
        assert total == cr2


def test_layered_class_multiplicity():
    t = TreeClass(n=5, layers=(2, 2), parents=(), composition=(2, 0))
    assert multiplicity(t) == 6


def test_small_tree_sums():
    full = tree_sum(3)
    assert [(t, m) for t, m in full.entries] == [(TreeClass.star(3), 1), (TreeClass.chain(3), 2)]
    assert [t for t, _ in tree_sum(3, "a-subset").entries] == [TreeClass.star(3)]
    assert all(len(admissible_edges(t)) == len(label.boltzmann_edges) for t, (label, _) in zip(enumerate_tr(6), tree_sum(6).combination.entries))
