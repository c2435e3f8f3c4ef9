"""Hyperplane classes, sectors, fibers, carriers, gates, and crossings.

The prism([3, 2]) oracle was worked out by hand: the parallel class of
the three matching edges has the two triangles as sectors, and the class
of the six triangle edges has the three matching edges as sectors.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasimedian.errors import DisconnectedError
from quasimedian.generators import (
    complete_graph,
    cycle_graph,
    gated_amalgam,
    hypercube,
    path_graph,
    prism,
    random_quasi_median,
)
from quasimedian.graphs import Graph, pattern_graph
from quasimedian.hyperplanes import (
    are_transverse,
    compute_hyperplanes,
    crossing_graph,
    gate,
    is_gated,
    is_geodesic,
    separating_hyperplanes,
    separation_counts,
    verify_carrier_decomposition,
)


def test_prism_decomposition():
    d = compute_hyperplanes(prism([3, 2]))
    assert d.k == 2
    assert d.classes == (
        ((0, 1), (2, 3), (4, 5)),
        ((0, 2), (0, 4), (1, 3), (1, 5), (2, 4), (3, 5)),
    )
    assert d.sectors == (
        (frozenset({0, 2, 4}), frozenset({1, 3, 5})),
        (frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})),
    )
    assert d.fibers == d.sectors
    assert d.carriers == (frozenset(range(6)), frozenset(range(6)))
    assert d.edge_class[(0, 1)] == 0 and d.edge_class[(0, 2)] == 1


def test_every_edge_is_classified_once():
    g = prism([3, 3, 2])
    d = compute_hyperplanes(g)
    classified = [e for cls in d.classes for e in cls]
    assert sorted(classified) == g.edges()
    assert len(classified) == len(set(classified))


def test_hexagon_has_singleton_classes_and_one_sector():
    d = compute_hyperplanes(cycle_graph(6))
    assert d.k == 6
    assert all(len(cls) == 1 for cls in d.classes)
    assert all(len(secs) == 1 for secs in d.sectors)
    # with a single sector nothing is ever separated
    assert not separation_counts(d).any()


def test_hypercube_classes():
    d = compute_hyperplanes(hypercube(3))
    assert d.k == 3
    assert all(len(cls) == 4 for cls in d.classes)
    assert all(len(secs) == 2 for secs in d.sectors)


def test_disconnected_input_is_rejected():
    with pytest.raises(DisconnectedError):
        compute_hyperplanes(Graph(3, [(0, 1)]))


def test_distance_equals_separation_on_catalog():
    for g in (prism([3, 2]), prism([2, 2, 2]), prism([4, 3]), hypercube(4), path_graph(7)):
        d = compute_hyperplanes(g)
        assert np.array_equal(
            separation_counts(d), g.distance_matrix().astype(np.int64)
        )


def test_separating_hyperplanes_on_prism():
    d = compute_hyperplanes(prism([3, 2]))
    assert separating_hyperplanes(d, 0, 5) == frozenset({0, 1})
    assert separating_hyperplanes(d, 0, 1) == frozenset({0})
    assert separating_hyperplanes(d, 0, 0) == frozenset()


def test_geodesics_cross_each_class_once():
    c4 = cycle_graph(4)
    d = compute_hyperplanes(c4)
    assert is_geodesic(d, [0, 1, 2]) == (True, None)
    # walking three sides of the square crosses the {01, 23} class twice
    assert is_geodesic(d, [0, 1, 2, 3]) == (False, 0)
    # immediate backtracking recrosses the same class
    assert is_geodesic(d, [0, 1, 0]) == (False, 0)
    with pytest.raises(ValueError):
        is_geodesic(d, [0, 2])


def test_gate_of_clique_edge_from_opposite_vertex_ties():
    res = gate(complete_graph(3), [0, 1], 2)
    assert res.gate is None
    assert res.witness == ("tie", 0, 1)
    assert not res.ok


def test_gate_detour_witness_on_path_endpoints():
    res = gate(path_graph(4), [0, 3], 1)
    assert res.gate is None
    assert res.witness == ("detour", 0, 3)


def test_gate_positive_case():
    res = gate(path_graph(4), [2, 3], 0)
    assert res.gate == 2
    assert res.ok and res.witness is None


def test_is_gated():
    k3 = complete_graph(3)
    assert not is_gated(k3, [0, 1])
    assert is_gated(k3, [0])
    assert is_gated(k3, [0, 1, 2])
    p4 = path_graph(4)
    assert is_gated(p4, [1, 2])
    assert not is_gated(p4, [0, 3])


def test_sectors_fibers_and_carriers_are_gated():
    for g in (prism([3, 2]), prism([2, 2, 2]), hypercube(3)):
        d = compute_hyperplanes(g)
        dist = g.distance_matrix()
        for j in range(d.k):
            for sec in d.sectors[j]:
                assert is_gated(g, sec, dist)
            for fib in d.fibers[j]:
                assert is_gated(g, fib, dist)
            assert is_gated(g, d.carriers[j], dist)


def test_carrier_products_on_prism():
    g = prism([3, 2])
    d = compute_hyperplanes(g)
    for j in range(d.k):
        rep = verify_carrier_decomposition(d, j)
        assert rep.ok, rep.reason
    rep0 = verify_carrier_decomposition(d, 0)
    assert len(rep0.clique) == 2 and len(rep0.fiber) == 3
    rep1 = verify_carrier_decomposition(d, 1)
    assert len(rep1.clique) == 3 and len(rep1.fiber) == 2


def test_carrier_product_fails_on_diamond():
    # the diamond collapses to one class whose "clique" is not a clique
    d = compute_hyperplanes(pattern_graph("K4minus"))
    assert d.k == 1
    rep = verify_carrier_decomposition(d, 0)
    assert not rep.ok
    assert rep.reason == "clique pair (2, 3) not a class edge"


def test_transversality():
    d = compute_hyperplanes(prism([3, 2]))
    assert are_transverse(d, 0, 1)
    dp = compute_hyperplanes(path_graph(3))
    assert not are_transverse(dp, 0, 1)


def test_crossing_graph_of_cube_is_triangle():
    d = compute_hyperplanes(hypercube(3))
    x = crossing_graph(d)
    assert x.n == 3
    assert x.edges() == [(0, 1), (0, 2), (1, 2)]
    assert x.labels == {0: "J0", 1: "J1", 2: "J2"}


def test_crossing_graph_of_path_has_no_edges():
    x = crossing_graph(compute_hyperplanes(path_graph(4)))
    assert x.n == 3 and x.edge_count() == 0


def test_amalgam_distance_theorem():
    c4 = cycle_graph(4)
    g = gated_amalgam(c4, prism([3, 2]), [(0, 0), (1, 1)])
    d = compute_hyperplanes(g)
    assert np.array_equal(separation_counts(d), g.distance_matrix().astype(np.int64))


@given(st.integers(min_value=0, max_value=5_000))
def test_random_instances_satisfy_distance_theorem(seed):
    g = random_quasi_median(seed, 3, max_prism=3)
    d = compute_hyperplanes(g)
    assert np.array_equal(separation_counts(d), g.distance_matrix().astype(np.int64))


@given(st.integers(min_value=0, max_value=5_000))
def test_random_instance_sectors_are_gated(seed):
    g = random_quasi_median(seed, 2, max_prism=3)
    d = compute_hyperplanes(g)
    dist = g.distance_matrix()
    for j in range(d.k):
        for sec in d.sectors[j]:
            assert is_gated(g, sec, dist)
