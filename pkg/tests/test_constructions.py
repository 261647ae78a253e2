"""Unit tests for graph family builders and labeling constructions.

Frozen expected values in this file were derived by hand from the labeling
rules (documented per test) before running the code against them.
"""

import random

import pytest

from esdlabel import (
    ConstructionResult,
    Family,
    Graph,
    NoneExists,
    UnsupportedByConstruction,
    build_graph,
    construct,
    edge_weights,
    label_complete_bipartite,
    label_complete_fibonacci,
    label_cycle,
    label_fan,
    label_grid,
    label_sunlet,
    label_tight_extremal,
    label_tree_bfs,
    parse_family,
    random_tree,
    verify_esd,
)
from esdlabel.constructions import ConstructionError

from conftest import naive_is_esd


# ---------------------------------------------------------------------------
# family parsing
# ---------------------------------------------------------------------------

def test_parse_family_round_trip():
    for text in ("path:7", "star:4", "tree:12", "cycle:9", "kpq:2,7",
                 "tight:30", "fan:8", "grid:3x4", "sunlet:5,2", "complete:6"):
        fam = parse_family(text)
        assert str(fam) == text
        assert parse_family(str(fam)) == fam


def test_parse_family_json():
    fam = parse_family("sunlet:5,2")
    assert fam.to_json() == {"kind": "sunlet", "params": [5, 2]}


def test_parse_family_errors():
    for bad in ("nope:3", "path", "path:", "path:x", "kpq:3", "grid:2x2x2",
                "cycle:0", "kpq:2,-1", ""):
        with pytest.raises(ConstructionError):
            parse_family(bad)


# ---------------------------------------------------------------------------
# graph builders
# ---------------------------------------------------------------------------

def test_build_graph_shapes():
    assert build_graph("path:4").edges == ((1, 2), (2, 3), (3, 4))
    assert build_graph("star:3").edges == ((1, 2), (1, 3), (1, 4))
    assert build_graph("cycle:4").edges == ((1, 2), (1, 4), (2, 3), (3, 4))
    assert build_graph("kpq:2,3").edges == (
        (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)
    )
    # fan: path over 1..n-1 plus an apex adjacent to every path vertex
    assert build_graph("fan:5").edges == (
        (1, 2), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)
    )
    assert build_graph("complete:4").edge_count == 6
    # tight: hub vertices 1 and 2 cover everything, meeting the edge bound
    tight = build_graph("tight:6")
    assert tight.edge_count == 2 * 6 - 3
    assert tight.degree(1) == 5 and tight.degree(2) == 5


def test_build_graph_grid_shape():
    # rows of length 3, 2 rows: row edges then column edges
    g = build_graph("grid:3x2")
    assert g.n == 6
    assert g.edges == ((1, 2), (1, 4), (2, 3), (2, 5), (3, 6), (4, 5), (5, 6))


def test_build_graph_sunlet_shape():
    # one path of order p per cycle position, the head being the cycle vertex
    g = build_graph("sunlet:3,2")
    assert g.n == 6
    assert g.edges == ((1, 2), (1, 3), (1, 5), (3, 4), (3, 5), (5, 6))
    assert build_graph("sunlet:4,1") == build_graph("cycle:4")
    assert build_graph("sunlet:3,3").n == 9


def test_build_graph_errors():
    for bad in ("cycle:2", "fan:1", "tight:1", "sunlet:2,2"):
        with pytest.raises(ConstructionError):
            build_graph(bad)


def test_random_tree_properties():
    rng = random.Random(7)
    for n in (1, 2, 5, 20, 60):
        g = random_tree(n, rng)
        assert g.n == n and g.edge_count == n - 1 and g.is_tree()
    a = build_graph("tree:15", seed=42)
    b = build_graph("tree:15", seed=42)
    c = build_graph("tree:15", seed=43)
    assert a == b
    assert a != c or a.n == 15  # different seeds usually differ; n is tiny


# ---------------------------------------------------------------------------
# trees (BFS labeling)
# ---------------------------------------------------------------------------

def test_label_tree_bfs_hand_case():
    # BFS from 1 visits 1, then 3, 4 (ascending neighbors), then 2, then 5,
    # so labels follow that visit order and parent-edge weights are 3,4,6,8
    g = Graph(5, [(1, 3), (1, 4), (2, 3), (4, 5)])
    res = label_tree_bfs(g)
    assert res.labeling.assignment == {1: 1, 3: 2, 4: 3, 2: 4, 5: 5}
    assert [w for _, w in edge_weights(g, res.labeling)] == [3, 4, 6, 8]
    assert res.canonical


def test_label_tree_bfs_parent_weights_increase():
    rng = random.Random(21)
    for n in (2, 6, 17, 40):
        for _ in range(20):
            g = random_tree(n, rng)
            phi = label_tree_bfs(g).labeling
            label_to_vertex = {phi.get(v): v for v in g.vertices()}
            weights = []
            for t in range(2, n + 1):
                v = label_to_vertex[t]
                parent = min(g.neighbors(v), key=phi.get)
                weights.append(t + phi.get(parent))
            assert weights == sorted(set(weights)), "parent weights must increase"


def test_label_tree_bfs_other_root():
    g = build_graph("path:6")
    res = label_tree_bfs(g, root=3)
    assert res.labeling.get(3) == 1
    assert verify_esd(g, res.labeling, require_total=True).esd


def test_label_tree_bfs_rejects_non_trees():
    with pytest.raises(ConstructionError):
        label_tree_bfs(build_graph("cycle:4"))
    with pytest.raises(ConstructionError):
        label_tree_bfs(build_graph("path:3"), root=9)


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------

def test_label_cycle_odd_is_identity():
    res = label_cycle(5)
    assert res.labeling.assignment == {1: 1, 2: 2, 3: 3, 4: 4, 5: 5}
    assert sorted(w for _, w in edge_weights(res.graph, res.labeling)) == [3, 5, 6, 7, 9]


def test_label_cycle_even_swaps_tail():
    res = label_cycle(6)
    assert res.labeling.assignment == {1: 1, 2: 2, 3: 3, 4: 4, 5: 6, 6: 5}
    weights = [w for _, w in edge_weights(res.graph, res.labeling)]
    evens = sorted(w for w in weights if w % 2 == 0)
    assert evens == [6, 10]  # exactly n and 2n-2


def test_label_cycle_parity_pattern():
    for n in range(3, 40):
        res = label_cycle(n)
        weights = [w for _, w in edge_weights(res.graph, res.labeling)]
        assert len(set(weights)) == n
        evens = sorted(w for w in weights if w % 2 == 0)
        if n % 2 == 1:
            assert evens == [n + 1]
        else:
            assert evens == [n, 2 * n - 2]


# ---------------------------------------------------------------------------
# complete bipartite
# ---------------------------------------------------------------------------

def test_label_kpq_small_part_two():
    # part {1,2} takes labels {1,n}; the big part counts up from 2.
    # Hub 1 contributes weights 3..q+2, hub n contributes n+3..2n-1.
    res = label_complete_bipartite(2, 3)
    assert res.labeling.assignment == {1: 1, 2: 5, 3: 2, 4: 3, 5: 4}
    assert sorted(w for _, w in edge_weights(res.graph, res.labeling)) == [3, 4, 5, 7, 8, 9]
    assert res.canonical


def test_label_kpq_orientation_matches_build_graph():
    for p, q in ((2, 3), (3, 2), (1, 4), (4, 1), (2, 2), (2, 7), (7, 2)):
        res = label_complete_bipartite(p, q)
        assert res.graph == build_graph(f"kpq:{p},{q}")
        assert verify_esd(res.graph, res.labeling, require_total=True).esd


def test_label_kpq_star_takes_identity():
    res = label_complete_bipartite(1, 5)
    assert res.labeling.assignment == {v: v for v in range(1, 7)}


def test_label_kpq_both_parts_large_none_exists():
    for p, q in ((3, 3), (3, 4), (4, 4), (5, 9)):
        out = label_complete_bipartite(p, q)
        assert isinstance(out, NoneExists)
        assert out.to_json()["noneExists"] is True
        assert out.reason


# ---------------------------------------------------------------------------
# tight extremal graphs
# ---------------------------------------------------------------------------

def test_label_tight_extremal_hand_case():
    # hubs (vertices 1 and 2) take labels 1 and n; the rest count up from 2
    res = label_tight_extremal(5)
    assert res.labeling.assignment == {1: 1, 2: 5, 3: 2, 4: 3, 5: 4}
    assert sorted(w for _, w in edge_weights(res.graph, res.labeling)) == list(range(3, 10))


def test_label_tight_extremal_full_weight_range():
    for n in (2, 3, 4, 10, 37):
        res = label_tight_extremal(n)
        weights = sorted(w for _, w in edge_weights(res.graph, res.labeling))
        assert weights == list(range(3, 2 * n))
        assert res.canonical


# ---------------------------------------------------------------------------
# fans
# ---------------------------------------------------------------------------

def test_label_fan_small_cases_exist():
    for n in range(2, 8):
        res = label_fan(n)
        assert isinstance(res, ConstructionResult)
        assert res.canonical
        assert verify_esd(res.graph, res.labeling, require_total=True).esd


def test_label_fan_eight_none_exists():
    out = label_fan(8)
    assert isinstance(out, NoneExists)


def test_label_fan_rejects_tiny():
    with pytest.raises(ConstructionError):
        label_fan(1)


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

def test_label_grid_even_row_length_is_identity():
    res = label_grid(2, 3)
    assert res.labeling.assignment == {v: v for v in range(1, 7)}
    assert verify_esd(res.graph, res.labeling, require_total=True).esd


def test_label_grid_odd_row_length_labels_down_columns():
    # hand-derived: with rows of length 3 and 2 rows, writing labels down
    # columns gives 1,3,5 on the top row and 2,4,6 on the bottom row
    res = label_grid(3, 2)
    assert res.labeling.assignment == {1: 1, 2: 3, 3: 5, 4: 2, 5: 4, 6: 6}
    assert res.graph == build_graph("grid:3x2")


def test_label_grid_both_odd():
    assert label_grid(1, 1).labeling.assignment == {1: 1}
    with pytest.raises(UnsupportedByConstruction):
        label_grid(3, 3)
    with pytest.raises(UnsupportedByConstruction):
        label_grid(1, 5)


def test_label_grid_rectangles_verify():
    for k in range(1, 7):
        for l in range(1, 7):
            if k % 2 == 1 and l % 2 == 1 and (k, l) != (1, 1):
                continue
            res = label_grid(k, l)
            assert verify_esd(res.graph, res.labeling, require_total=True).esd
            assert res.canonical


# ---------------------------------------------------------------------------
# sunlets
# ---------------------------------------------------------------------------

def test_label_sunlet_odd_cycle_even_paths_identity():
    res = label_sunlet(3, 2)
    assert res.labeling.assignment == {v: v for v in range(1, 7)}
    assert sorted(w for _, w in edge_weights(res.graph, res.labeling)) == [3, 4, 6, 7, 8, 11]
    assert res.canonical


def test_label_sunlet_greedy_hand_case():
    # hand-derived for k=4, p=2: heads 1,3,5,7 take the even-cycle labels
    # 1,2,4,3; the greedy pass then hands 7,8,9,10 to the pendants of the
    # heads in label order (head 1 -> v2, head 2 -> v4, head 3 -> v8,
    # head 4 -> v6)
    res = label_sunlet(4, 2)
    assert res.labeling.assignment == {
        1: 1, 2: 7, 3: 2, 4: 8, 5: 4, 6: 10, 7: 3, 8: 9,
    }
    assert res.label_pool_size == 10
    assert not res.canonical


def test_label_sunlet_degenerate_single_vertex_paths():
    assert label_sunlet(4, 1).labeling == label_cycle(4).labeling
    assert label_sunlet(3, 1).labeling.assignment == {1: 1, 2: 2, 3: 3}


def test_label_sunlet_measured_pool_sizes():
    # the greedy run lands on (p+1)k - 2 whenever p >= 2
    for k, p in ((4, 2), (5, 3), (4, 3), (6, 2), (5, 5)):
        res = label_sunlet(k, p)
        assert res.label_pool_size == (p + 1) * k - 2
        assert verify_esd(res.graph, res.labeling, require_total=True).esd


# ---------------------------------------------------------------------------
# complete graphs with Fibonacci labels
# ---------------------------------------------------------------------------

def test_label_fibonacci_sequence():
    res = label_complete_fibonacci(6)
    assert [res.labeling.get(v) for v in res.graph.vertices()] == [1, 2, 3, 5, 8, 13]
    assert res.label_pool_size == 13
    assert verify_esd(res.graph, res.labeling, require_total=True).esd


def test_label_fibonacci_tiny():
    assert label_complete_fibonacci(1).labeling.assignment == {1: 1}
    assert label_complete_fibonacci(2).labeling.assignment == {1: 1, 2: 2}
    assert label_complete_fibonacci(4).label_pool_size == 5


# ---------------------------------------------------------------------------
# construct dispatcher and result shapes
# ---------------------------------------------------------------------------

def test_construct_matches_build_graph_for_all_families():
    rng_seed = 5
    for spec in ("path:6", "star:5", "cycle:5", "cycle:6", "kpq:2,3", "kpq:3,2",
                 "tight:7", "fan:5", "grid:3x2", "grid:2x3", "sunlet:3,2",
                 "sunlet:4,2", "complete:5", "tree:9"):
        res = construct(spec, seed=rng_seed)
        assert isinstance(res, ConstructionResult)
        assert res.graph == build_graph(spec, seed=rng_seed)
        assert verify_esd(res.graph, res.labeling, require_total=True).esd
        assert naive_is_esd(res.graph, res.labeling)


def test_construct_accepts_family_objects():
    fam = Family("path", (4,))
    res = construct(fam)
    assert res.graph == build_graph("path:4")


def test_construct_none_exists_pass_through():
    out = construct("fan:9")
    assert isinstance(out, NoneExists)
    out = construct("kpq:3,3")
    assert isinstance(out, NoneExists)


def test_construction_result_json():
    res = construct("tight:4")
    data = res.to_json()
    assert data["canonical"] is True
    assert data["labelPoolSize"] == 4
    assert data["graph"]["n"] == 4
    assert data["labeling"]["l"] == 4
