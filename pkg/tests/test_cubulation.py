"""Dual cube complex construction from sector walls.

The triangle is the canonical non-median example: its three walls admit
four consistent orientations forming a star, whose center orients every
wall toward the complement side.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasimedian.errors import CapExceeded
from quasimedian.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    hypercube,
    path_graph,
    prism,
    random_quasi_median,
)
from quasimedian.graphs import is_isomorphic
from quasimedian.cubulation import (
    Wallspace,
    all_consistent_orientations,
    cubulate,
    is_consistent,
    orientation_to_tuple,
    principal_orientation,
    quasi_isometry_report,
    wall_separation_counts,
    walls_from_graph,
)
from quasimedian.recognition import is_median


def test_triangle_walls():
    ws = walls_from_graph(complete_graph(3))
    assert ws.k == 3
    # each wall splits one vertex from the other two
    assert sorted(sorted(pair) for pair in ws.sides) == [
        [0b001, 0b110],
        [0b010, 0b101],
        [0b011, 0b100],
    ]


def test_triangle_cubulation_is_a_star():
    cub = cubulate(walls_from_graph(complete_graph(3)))
    assert cub.graph.n == 4
    assert is_isomorphic(cub.graph, complete_bipartite(1, 3))
    centers = [v for v in range(4) if cub.graph.degree(v) == 3]
    assert len(centers) == 1
    # the center orients every wall away from its sector side
    assert cub.orientations[centers[0]] == 0b111


def test_principal_orientations_are_consistent():
    for g in (complete_graph(3), prism([3, 2]), hypercube(3)):
        ws = walls_from_graph(g)
        for x in range(g.n):
            assert is_consistent(ws, principal_orientation(ws, x))


def test_orientation_tuple_view():
    ws = walls_from_graph(complete_graph(3))
    o = principal_orientation(ws, 0)
    assert len(orientation_to_tuple(ws, o)) == ws.k


def test_median_graphs_are_their_own_cubulation():
    for g in (complete_graph(2), path_graph(3), cycle_graph(4), hypercube(3)):
        cub = cubulate(walls_from_graph(g))
        assert is_isomorphic(cub.graph, g)
        # every host vertex appears as its principal orientation
        assert len(set(cub.vertex_map)) == g.n


def test_prism_cubulation():
    cub = cubulate(walls_from_graph(prism([3, 2])))
    assert cub.graph.n == 8
    assert cub.graph.edge_count() == 10
    assert is_median(cub.graph).positive


def test_cube_distance_counts_separating_walls():
    cub = cubulate(walls_from_graph(prism([3, 2])))
    dist = cub.graph.distance_matrix().astype(int)
    for a in range(cub.graph.n):
        for b in range(cub.graph.n):
            hamming = bin(cub.orientations[a] ^ cub.orientations[b]).count("1")
            assert dist[a][b] == hamming


def test_flip_search_agrees_with_exhaustive_filter():
    for g in (
        complete_graph(3),
        prism([3, 2]),
        hypercube(3),
        random_quasi_median(5, 3, max_prism=3),
    ):
        ws = walls_from_graph(g)
        assert sorted(cubulate(ws).orientations) == sorted(
            all_consistent_orientations(ws)
        )


def test_wall_separation_counts_match_host_distance_on_median_hosts():
    for g in (path_graph(5), cycle_graph(4), hypercube(3)):
        ws = walls_from_graph(g)
        assert np.array_equal(
            wall_separation_counts(ws), g.distance_matrix().astype(np.int64)
        )


def test_quasi_isometry_report_on_triangle():
    cub = cubulate(walls_from_graph(complete_graph(3)))
    assert quasi_isometry_report(cub) == {
        "host_vertices": 3,
        "cube_vertices": 4,
        "walls": 3,
        "max_additive_error": 1,
        "multiplicative_lambda": 2.0,
        "cobounded_radius": 1,
    }


def test_quasi_isometry_report_is_exact_on_median_hosts():
    cub = cubulate(walls_from_graph(hypercube(3)))
    rep = quasi_isometry_report(cub)
    assert rep["max_additive_error"] == 0
    assert rep["multiplicative_lambda"] == 1.0
    assert rep["cobounded_radius"] == 0


def test_cubulation_cap():
    with pytest.raises(CapExceeded):
        cubulate(walls_from_graph(hypercube(4)), cap=3)


def test_exhaustive_filter_wall_limit():
    ws = walls_from_graph(random_quasi_median(11, 12, max_prism=3))
    if ws.k > 22:
        with pytest.raises(CapExceeded):
            all_consistent_orientations(ws)
    else:
        all_consistent_orientations(ws)


@given(st.integers(min_value=0, max_value=3_000))
def test_random_instance_cubulations_are_median(seed):
    g = random_quasi_median(seed, 2, max_prism=3)
    ws = walls_from_graph(g)
    cub = cubulate(ws)
    assert is_median(cub.graph).positive
    assert sorted(cub.orientations) == sorted(all_consistent_orientations(ws))
