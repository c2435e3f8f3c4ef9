"""Graphs of wreaths over median hosts.

The square host with the trivial lamp group isolates the move relation:
nine convex supports and twelve allowed moves.  Eight further support
pairs pass the naive symmetric-difference count of one yet fail the
component condition, so the stricter move test is load-bearing: with
those eight extra edges the result would not be quasi-median.
"""

import pytest

from quasimedian.errors import CapExceeded, DomainError, NotMedianError, SchemaError
from quasimedian.generators import (
    complete_graph,
    cycle_graph,
    hypercube,
    path_graph,
)
from quasimedian.graphs import Graph
from quasimedian.graph_products import FiniteGroup
from quasimedian.recognition import is_quasi_median
from quasimedian.wreaths import (
    ENUMERATION_VERTEX_LIMIT,
    Wreath,
    WreathConfig,
    build_wreath_graph,
    enumerate_convex_supports,
    hyperplane_set,
    trivial_group,
    wreath_config_from_json,
    wreath_edge,
)

Z2 = FiniteGroup.cyclic(2)
Z3 = FiniteGroup.cyclic(3)


def test_trivial_group():
    g = trivial_group()
    assert g.order == 1
    assert g.mul(0, 0) == 0


def test_config_requires_median_host():
    with pytest.raises(NotMedianError):
        WreathConfig.create(complete_graph(3), (0,), Z2)


def test_config_validates_lamp_set():
    host = path_graph(3)
    with pytest.raises(DomainError):
        WreathConfig.create(host, (), Z2)
    with pytest.raises(DomainError):
        WreathConfig.create(host, (0, 3), Z2)
    # repeated locations collapse; omega is a set
    assert WreathConfig.create(host, (2, 0, 0), Z2).omega == (0, 2)


def test_convex_supports_of_square():
    got = [sorted(s) for s in enumerate_convex_supports(cycle_graph(4))]
    assert got == [
        [0],
        [1],
        [0, 1],
        [2],
        [1, 2],
        [3],
        [0, 3],
        [2, 3],
        [0, 1, 2, 3],
    ]


def test_convex_supports_of_path():
    got = [sorted(s) for s in enumerate_convex_supports(path_graph(3))]
    assert got == [[0], [1], [0, 1], [2], [1, 2], [0, 1, 2]]


def test_convexity_predicate():
    cfg = WreathConfig.create(cycle_graph(4), (0, 1, 2, 3), Z2)
    assert cfg.is_convex([0, 1])
    assert not cfg.is_convex([0, 2])
    assert cfg.is_convex([0, 1, 2, 3])
    assert not cfg.is_convex([0, 1, 2])


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_convex_supports(path_graph(ENUMERATION_VERTEX_LIMIT + 1))


def test_wreath_vertex_validation():
    cfg = WreathConfig.create(cycle_graph(4), (0, 1), Z2)
    w = Wreath.create(cfg, (0, 1), ((0, 1),))
    assert w.color_at(0) == 1
    assert w.color_at(1) == 0
    with pytest.raises(DomainError):
        Wreath.create(cfg, (0, 2), ())
    with pytest.raises(DomainError):
        Wreath.create(cfg, (0,), ((2, 1),))
    with pytest.raises(DomainError):
        Wreath.create(cfg, (0,), ((0, 5),))


def test_square_with_trivial_lamps():
    cfg = WreathConfig.create(cycle_graph(4), (0, 1, 2, 3), trivial_group())
    res = build_wreath_graph(cfg)
    assert res.graph.n == 9
    assert res.graph.edge_count() == 12
    assert len(res.move_pairs) == 12
    assert res.naive_mismatch_pairs == 8
    assert is_quasi_median(res.graph).positive


def test_single_vertex_host_gives_lamp_clique():
    cfg = WreathConfig.create(Graph(1), (0,), Z3)
    res = build_wreath_graph(cfg)
    assert res.graph.n == 3
    assert res.graph.edge_count() == 3


def test_edge_host_with_binary_lamps():
    cfg = WreathConfig.create(complete_graph(2), (0, 1), Z2)
    res = build_wreath_graph(cfg)
    assert res.graph.n == 12
    assert res.graph.edge_count() == 16
    assert is_quasi_median(res.graph).positive


def test_path_host_with_binary_lamps():
    cfg = WreathConfig.create(path_graph(3), (0, 1, 2), Z2)
    res = build_wreath_graph(cfg)
    assert res.graph.n == 48
    assert res.graph.edge_count() == 88
    assert len(res.move_pairs) == 6
    assert res.move_pairs == ((0, 2), (1, 2), (1, 4), (2, 5), (3, 4), (4, 5))
    assert res.naive_mismatch_pairs == 2
    assert is_quasi_median(res.graph).positive


def test_vertex_count_closed_form():
    for host, group in (
        (cycle_graph(4), Z2),
        (path_graph(3), Z3),
        (hypercube(2), Z3),
    ):
        cfg = WreathConfig.create(host, tuple(range(host.n)), group)
        res = build_wreath_graph(cfg)
        assert res.graph.n == len(res.supports) * group.order ** host.n


def test_index_round_trip():
    cfg = WreathConfig.create(path_graph(3), (0, 2), Z3)
    res = build_wreath_graph(cfg)
    for i in range(res.graph.n):
        assert res.index_of(res.wreath_at(i)) == i


def test_partial_lamp_set():
    cfg = WreathConfig.create(path_graph(3), (1,), Z2)
    res = build_wreath_graph(cfg)
    assert res.graph.n == 12
    assert is_quasi_median(res.graph).positive


def test_wreath_edge_classifies_built_edges():
    cfg = WreathConfig.create(path_graph(3), (0, 1, 2), Z2)
    res = build_wreath_graph(cfg)
    kinds = {"move": 0, "recolor": 0}
    for i in range(res.graph.n):
        wi = res.wreath_at(i)
        for j in range(i + 1, res.graph.n):
            wj = res.wreath_at(j)
            kind = wreath_edge(wi, wj, res.decomposition)
            assert (kind is not None) == res.graph.adjacent(i, j)
            if kind is not None:
                kinds[kind] += 1
    assert kinds["move"] + kinds["recolor"] == res.graph.edge_count()
    assert kinds["move"] == 48
    assert kinds["recolor"] == 40


def test_recolor_edges_stay_inside_support():
    cfg = WreathConfig.create(path_graph(3), (0, 1, 2), Z2)
    res = build_wreath_graph(cfg)
    for i in range(res.graph.n):
        wi = res.wreath_at(i)
        for j in res.graph.neighbors(i):
            wj = res.wreath_at(j)
            if wi.support == wj.support:
                diff = [
                    p
                    for p in (0, 1, 2)
                    if wi.color_at(p) != wj.color_at(p)
                ]
                assert len(diff) == 1
                assert diff[0] in wi.support


def test_hyperplane_set_monotone_under_inclusion():
    cfg = WreathConfig.create(cycle_graph(4), (0,), Z2)
    res = build_wreath_graph(cfg)
    d = res.decomposition
    assert hyperplane_set(d, (0,)) == frozenset()
    assert hyperplane_set(d, (0, 1)) < hyperplane_set(d, (0, 1, 2, 3))


def test_config_json():
    cfg = wreath_config_from_json(
        {
            "host": {"vertices": 2, "edges": [[0, 1]]},
            "omega": [0, 1],
            "lamp": {"cyclic": 2},
        }
    )
    assert cfg.group.order == 2
    trivial = wreath_config_from_json(
        {
            "host": {"vertices": 1, "edges": []},
            "omega": [0],
            "lamp": {"cyclic": 1},
        }
    )
    assert trivial.group.order == 1
    with pytest.raises(SchemaError):
        wreath_config_from_json({"host": {"vertices": 1, "edges": []}})
    with pytest.raises(SchemaError):
        wreath_config_from_json(
            {
                "host": {"vertices": 1, "edges": []},
                "omega": [0],
                "lamp": {"cyclic": -2},
            }
        )
