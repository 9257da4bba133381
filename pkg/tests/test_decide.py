"""Deciders against an inline scan oracle, plus frozen full reports.

The mini oracle here re-derives reconstructibility from scratch: collect
every graph on the same vertices whose sorted row multiset matches, then ask
whether each one is carried onto G by some relabeling. No shared code with
the deciders beyond the Graph container.
"""
from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from cancelgraph import (
    AnalysisReport,
    CapacityError,
    Graph,
    InvariantViolationError,
    Permutation,
    UsageError,
    apply_anti,
    bipartite_cancellation_decider,
    bipartite_reversal_witness,
    classify,
    enumerate_ant,
    is_anti_automorphism,
    is_bipartite,
    is_cancellation_graph,
    is_isomorphic,
    is_neighborhood_reconstructible,
    is_strongly_reconstructible,
    reconstruction_counterexample,
    strong_counterexample,
)
from cancelgraph.decide import DEFAULT_FAST_PATHS, FAST_PATH_NAMES, perm_order
from cancelgraph.graphs import iter_adj_rows, multiset_key
from cancelgraph.iso import adjacency_key

from conftest import graph_strategy


def scan_reconstructible(g: Graph) -> bool:
    key = multiset_key(g.adj)
    perms = [Permutation(img) for img in itertools.permutations(range(g.n))]
    for rows in iter_adj_rows(g.n, True):
        if multiset_key(tuple(rows)) != key:
            continue
        h = Graph(g.n, tuple(rows))
        if not any(g.relabel(p) == h for p in perms):
            return False
    return True


# ---------------------------------------------------------------------------
# decider vs scan
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_decider_matches_scan_exhaustively(n):
    for rows in iter_adj_rows(n, True):
        g = Graph(n, tuple(rows))
        assert is_neighborhood_reconstructible(g) == scan_reconstructible(g)


@settings(max_examples=60, deadline=None)
@given(graph_strategy(max_n=4, min_n=4, loops=True))
def test_decider_matches_scan_sampled(g):
    assert is_neighborhood_reconstructible(g) == scan_reconstructible(g)


@pytest.mark.parametrize(
    "paths",
    [(), ("involution",), ("bipartite",), ("orbit",), ("odd_power",), FAST_PATH_NAMES],
)
def test_fast_paths_agree(paths):
    for n in (1, 2, 3):
        for rows in iter_adj_rows(n, True):
            g = Graph(n, tuple(rows))
            assert is_neighborhood_reconstructible(
                g, fast_paths=paths
            ) == is_neighborhood_reconstructible(g, fast_paths=DEFAULT_FAST_PATHS)


def test_unknown_fast_path_rejected(c6):
    with pytest.raises(UsageError):
        is_neighborhood_reconstructible(c6, fast_paths=("involutions",))


def test_capacity_guard():
    with pytest.raises(CapacityError):
        is_neighborhood_reconstructible(Graph(9, (0,) * 9))
    with pytest.raises(CapacityError):
        classify(Graph(9, (0,) * 9))


def test_cancellation_is_the_same_predicate(c6, lp, sql, p_reconstruct):
    for g in (c6, lp, sql, p_reconstruct):
        assert is_cancellation_graph(g) == is_neighborhood_reconstructible(g)


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


def test_reconstruction_counterexample_hexagon(c6, two_k3):
    found = reconstruction_counterexample(c6)
    assert found is not None
    alpha, mate = found
    assert alpha.image == (3, 4, 5, 0, 1, 2)
    assert mate == two_k3
    assert apply_anti(c6, alpha) == mate
    assert not is_isomorphic(c6, mate)
    assert multiset_key(mate.adj) == multiset_key(c6.adj)


def test_reconstruction_counterexample_none_when_reconstructible(lp, p_reconstruct):
    assert reconstruction_counterexample(lp) is None
    assert reconstruction_counterexample(p_reconstruct) is None


def test_counterexample_is_least_over_the_mates(sql):
    alpha, mate = reconstruction_counterexample(sql)
    assert alpha.image == (0, 3, 2, 1)
    assert mate == Graph.from_edges(4, itertools.combinations(range(4), 2))
    best = adjacency_key(sql.n, mate.adj)
    for p in enumerate_ant(sql):
        moved = apply_anti(sql, p)
        if not is_isomorphic(moved, sql):
            assert best <= adjacency_key(sql.n, moved.adj)


def test_strongly_and_its_witness(c6, lp, p_reconstruct, asym7):
    assert is_strongly_reconstructible(lp)
    assert is_strongly_reconstructible(asym7)
    assert not is_strongly_reconstructible(c6)
    assert not is_strongly_reconstructible(p_reconstruct)
    assert strong_counterexample(lp) is None

    w = strong_counterexample(p_reconstruct)
    assert w is not None and w.image == (0, 3, 2, 1, 5, 4)
    assert is_anti_automorphism(p_reconstruct, w)
    moved = apply_anti(p_reconstruct, w)
    assert moved != p_reconstruct
    assert is_isomorphic(moved, p_reconstruct)  # reconstructible, just not strongly

    assert strong_counterexample(c6).image == (0, 5, 4, 3, 2, 1)


@settings(max_examples=80)
@given(graph_strategy(max_n=5, loops=True))
def test_strongly_means_every_permuted_graph_is_g(g):
    strong = is_strongly_reconstructible(g)
    assert strong == all(apply_anti(g, p) == g for p in enumerate_ant(g))
    if strong:
        assert is_neighborhood_reconstructible(g)


# ---------------------------------------------------------------------------
# bipartite route
# ---------------------------------------------------------------------------


def test_bipartite_decider_hexagon(c6):
    assert not bipartite_cancellation_decider(c6)
    w = bipartite_reversal_witness(c6)
    assert w is not None and w.image == (1, 0, 5, 4, 3, 2)
    assert w.is_involution()
    assert c6.relabel(w) == c6  # an automorphism
    # swaps the two sides
    assert {w(v) for v in (0, 2, 4)} == {1, 3, 5}


def test_bipartite_decider_small_cases():
    k2 = Graph.from_edges(2, [(0, 1)])
    assert not bipartite_cancellation_decider(k2)
    assert bipartite_reversal_witness(k2).image == (1, 0)

    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert bipartite_cancellation_decider(p3)
    assert bipartite_reversal_witness(p3) is None

    empty = Graph(3, (0, 0, 0))
    assert bipartite_cancellation_decider(empty)

    k3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(UsageError):
        bipartite_cancellation_decider(k3)


def test_bipartite_decider_matches_scan_exhaustively():
    for n in (1, 2, 3, 4):
        for rows in iter_adj_rows(n, False):
            g = Graph(n, tuple(rows))
            if not is_bipartite(g):
                continue
            assert bipartite_cancellation_decider(g) == scan_reconstructible(g)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

C6_REPORT = {
    "n": 6,
    "reconstructible": False,
    "strongly": False,
    "cancellation": False,
    "bipartite": True,
    "has_involution": True,
    "orbit_count": 4,
    "orbit_classes": ["01064504c0", "01066100d0", "01066210d0", "01066210e8"],
    "counterexample": {
        "alpha": [3, 4, 5, 0, 1, 2],
        "g_alpha_edges": [[0, 2], [0, 4], [1, 3], [1, 5], [2, 4], [3, 5]],
    },
    "witness_involution": [1, 0, 5, 4, 3, 2],
    "strongly_witness": [0, 5, 4, 3, 2, 1],
}

LP_REPORT = {
    "n": 2,
    "reconstructible": True,
    "strongly": True,
    "cancellation": True,
    "bipartite": False,
    "has_involution": False,
    "orbit_count": 1,
    "orbit_classes": ["010260"],
    "counterexample": None,
    "witness_involution": None,
    "strongly_witness": None,
}

SQL_REPORT = {
    "n": 4,
    "reconstructible": False,
    "strongly": False,
    "cancellation": False,
    "bipartite": False,
    "has_involution": True,
    "orbit_count": 3,
    "orbit_classes": ["01047680", "01047cc0", "0104ddc0"],
    "counterexample": {
        "alpha": [0, 3, 2, 1],
        "g_alpha_edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
    },
    "witness_involution": None,
    "strongly_witness": [0, 2, 3, 1],
}

P_RECONSTRUCT_REPORT = {
    "n": 6,
    "reconstructible": True,
    "strongly": False,
    "cancellation": True,
    "bipartite": True,
    "has_involution": True,
    "orbit_count": 1,
    "orbit_classes": ["01062182c0"],
    "counterexample": None,
    "witness_involution": None,
    "strongly_witness": [0, 3, 2, 1, 5, 4],
}


def test_classify_frozen_reports(c6, lp, sql, p_reconstruct):
    assert classify(c6).to_json_dict() == C6_REPORT
    assert classify(lp).to_json_dict() == LP_REPORT
    assert classify(sql).to_json_dict() == SQL_REPORT
    assert classify(p_reconstruct).to_json_dict() == P_RECONSTRUCT_REPORT


def test_classify_spider(asym7):
    rep = classify(asym7)
    assert rep.reconstructible and rep.strongly
    assert not rep.has_involution
    assert rep.orbit_count == 1
    assert rep.counterexample_alpha is None and rep.strongly_witness is None


def test_classify_cube(q3):
    rep = classify(q3)
    assert not rep.reconstructible
    assert rep.bipartite and rep.has_involution
    assert rep.orbit_count == 7
    assert rep.counterexample_alpha.image == (7, 6, 5, 4, 3, 2, 1, 0)
    assert rep.witness_involution.image == (1, 0, 3, 2, 5, 4, 7, 6)
    assert not is_isomorphic(rep.counterexample_graph, q3)
    assert multiset_key(rep.counterexample_graph.adj) == multiset_key(q3.adj)


def test_report_json_is_serializable(c6):
    text = json.dumps(classify(c6).to_json_dict())
    assert json.loads(text) == C6_REPORT


def test_report_invariants_are_enforced():
    base = dict(
        n=2,
        reconstructible=True,
        strongly=True,
        cancellation=True,
        bipartite=False,
        has_involution=False,
        orbit_count=1,
        orbit_classes=("010260",),
        counterexample_alpha=None,
        counterexample_graph=None,
        witness_involution=None,
        strongly_witness=None,
    )
    AnalysisReport(**base)  # sane baseline

    with pytest.raises(InvariantViolationError):
        AnalysisReport(**{**base, "cancellation": False})
    with pytest.raises(InvariantViolationError):
        AnalysisReport(**{**base, "reconstructible": False, "cancellation": False})
    with pytest.raises(InvariantViolationError):
        AnalysisReport(**{**base, "strongly_witness": Permutation((1, 0))})
    with pytest.raises(InvariantViolationError):
        AnalysisReport(**{**base, "witness_involution": Permutation((1, 0))})


@settings(max_examples=100)
@given(st.integers(1, 7).flatmap(lambda n: st.permutations(range(n))))
def test_perm_order_matches_permutation_order(img):
    p = Permutation(tuple(img))
    assert perm_order(p.image) == p.order()
