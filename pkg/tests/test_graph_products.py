"""Graph products: group arithmetic, normal forms, Cayley graphs.

Normal form oracles are hand-checked: in the direct product Z/2 x Z/2
the word uvuv collapses to the identity, while in the free product it is
already reduced of syllable length four.
"""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasimedian.errors import CapExceeded, DomainError, InfiniteGroupError, SchemaError
from quasimedian.generators import complete_graph, path_graph, prism
from quasimedian.graphs import Graph, is_isomorphic, maximal_cliques
from quasimedian.graph_products import (
    INFINITE,
    CayleyBall,
    FiniteGroup,
    GraphProductPresentation,
    cayley_ball,
    format_word,
    full_cayley_graph,
    inverse_word,
    multiply_words,
    presentation_from_json,
    reduce_word,
    syllable_length,
    vertex_group_cosets,
    word_equal,
    word_from_json,
    word_to_json,
)
from quasimedian.recognition import is_quasi_median

Z2 = FiniteGroup.cyclic(2)
Z3 = FiniteGroup.cyclic(3)
Z4 = FiniteGroup.cyclic(4)

FREE_PAIR = GraphProductPresentation(Graph(2), (Z2, Z2))  # infinite dihedral
DIRECT_PAIR = GraphProductPresentation(complete_graph(2), (Z2, Z2))
Z2xZ3 = GraphProductPresentation(complete_graph(2), (Z2, Z3))
RAAG_P3 = GraphProductPresentation(path_graph(3), (INFINITE, INFINITE, INFINITE))
Z3_FREE_Z3 = GraphProductPresentation(Graph(2), (Z3, Z3))


def test_cyclic_group_arithmetic():
    assert Z3.order == 3
    assert Z3.mul(1, 2) == 0
    assert Z3.inverse(1) == 2
    assert Z3.is_identity(0) and not Z3.is_identity(2)
    assert Z3.contains(2) and not Z3.contains(3)
    with pytest.raises(ValueError):
        FiniteGroup.cyclic(1)


def test_from_table_accepts_klein_four_group():
    table = [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ]
    g = FiniteGroup.from_table(table)
    assert g.order == 4
    assert all(g.inverse(e) == e for e in range(4))


def test_from_table_finds_relabelled_identity():
    g = FiniteGroup.from_table([[1, 0], [0, 1]])
    assert g.identity == 1
    assert g.is_identity(1) and not g.is_identity(0)


def test_from_table_rejects_bad_tables():
    with pytest.raises(ValueError):
        FiniteGroup.from_table([[0, 1], [1, 1]])  # not a bijection in row 1
    with pytest.raises(ValueError):
        FiniteGroup.from_table([[1, 1], [1, 1]])  # no identity element
    with pytest.raises(ValueError):
        FiniteGroup.from_table([[0, 1, 2], [1, 2, 0]])  # not square
    with pytest.raises(ValueError):
        FiniteGroup.from_table([[0, 1], [1, 2]])  # entry out of range


def test_infinite_symbol():
    assert INFINITE.order is None
    assert INFINITE.mul(3, -5) == -2
    assert INFINITE.inverse(7) == -7
    assert INFINITE.is_identity(0)
    assert INFINITE.contains(-(10**9))


def test_presentation_validation():
    with pytest.raises(ValueError):
        GraphProductPresentation(complete_graph(2), (Z2,))


def test_reduction_in_free_product_keeps_alternating_word():
    w = [(0, 1), (1, 1), (0, 1), (1, 1)]
    assert reduce_word(FREE_PAIR, w) == ((0, 1), (1, 1), (0, 1), (1, 1))
    assert syllable_length(FREE_PAIR, w) == 4


def test_reduction_in_direct_product_cancels():
    w = [(0, 1), (1, 1), (0, 1), (1, 1)]
    assert reduce_word(DIRECT_PAIR, w) == ()
    assert word_equal(DIRECT_PAIR, w, [])


def test_commuting_syllables_sort_by_vertex():
    assert reduce_word(DIRECT_PAIR, [(1, 1), (0, 1)]) == ((0, 1), (1, 1))
    assert reduce_word(FREE_PAIR, [(1, 1), (0, 1)]) == ((1, 1), (0, 1))


def test_reduction_shuffles_across_commuting_blocks():
    w = [(0, 1), (2, 5), (1, 3)]
    assert reduce_word(RAAG_P3, w) == ((0, 1), (1, 3), (2, 5))


def test_syllable_merging_in_cyclic_group():
    pres = GraphProductPresentation(Graph(1), (Z4,))
    assert reduce_word(pres, [(0, 1), (0, 3)]) == ()
    assert reduce_word(pres, [(0, 2), (0, 3)]) == ((0, 1),)


def test_identity_syllables_are_dropped():
    assert reduce_word(Z2xZ3, [(0, 0), (1, 0)]) == ()
    assert reduce_word(Z2xZ3, [(1, 2), (0, 0)]) == ((1, 2),)


def test_word_validation():
    with pytest.raises(ValueError):
        reduce_word(Z2xZ3, [(2, 1)])
    with pytest.raises(ValueError):
        reduce_word(Z2xZ3, [(0, 5)])


def test_inverse_and_multiply():
    w = [(0, 1), (1, 2)]
    assert multiply_words(Z2xZ3, w, inverse_word(Z2xZ3, w)) == ()
    # the factors commute, so the inverse is re-sorted into canonical order
    assert inverse_word(Z2xZ3, w) == ((0, 1), (1, 1))


def test_format_word():
    pres = GraphProductPresentation(
        complete_graph(2), (Z2, Z3)
    )
    assert format_word(pres, []) == "e"
    text = format_word(pres, [(0, 1), (1, 2)])
    assert "^" in text and " " in text


WORDS = st.lists(
    st.tuples(st.integers(0, 2), st.integers(-3, 3)), max_size=8
)


@given(WORDS)
def test_reduction_is_idempotent(w):
    r = reduce_word(RAAG_P3, w)
    assert reduce_word(RAAG_P3, list(r)) == r


@given(WORDS)
def test_reduction_preserves_group_element(w):
    assert word_equal(RAAG_P3, w, reduce_word(RAAG_P3, w))


@given(WORDS)
def test_word_times_inverse_is_identity(w):
    assert multiply_words(RAAG_P3, w, inverse_word(RAAG_P3, w)) == ()


@given(WORDS, WORDS)
def test_syllable_length_is_subadditive(a, b):
    ab = multiply_words(RAAG_P3, a, b)
    assert syllable_length(RAAG_P3, ab) <= syllable_length(RAAG_P3, a) + syllable_length(
        RAAG_P3, b
    )


def test_full_cayley_of_z2_times_z3_is_prism():
    cay = full_cayley_graph(Z2xZ3)
    assert cay.graph.n == 6
    assert is_isomorphic(cay.graph, prism([3, 2]))
    assert is_quasi_median(cay.graph).positive
    assert cay.index[()] == 0


def test_cosets_biject_with_maximal_cliques():
    cay = full_cayley_graph(Z2xZ3)
    cosets = vertex_group_cosets(Z2xZ3, cay)
    cliques = {frozenset(c) for c in maximal_cliques(cay.graph)}
    assert len(cosets) == 5
    assert {frozenset(c) for c in cosets} == cliques


def test_full_cayley_requires_complete_gamma_and_finite_groups():
    with pytest.raises(DomainError):
        full_cayley_graph(FREE_PAIR)
    with pytest.raises(InfiniteGroupError):
        full_cayley_graph(GraphProductPresentation(complete_graph(2), (Z2, INFINITE)))
    with pytest.raises(CapExceeded):
        full_cayley_graph(
            GraphProductPresentation(complete_graph(4), (Z4, Z4, Z4, Z4)), cap=100
        )


def test_dihedral_ball_is_a_path():
    ball = cayley_ball(FREE_PAIR, 3)
    assert isinstance(ball, CayleyBall)
    assert ball.graph.n == 7
    assert is_isomorphic(ball.graph, path_graph(7))
    assert not ball.complete
    # interior vertices keep their full Cayley neighborhood
    assert ball.interior == frozenset({0, 1, 2})


def test_free_product_of_triangles_ball():
    ball = cayley_ball(Z3_FREE_Z3, 2)
    assert ball.graph.n == 13
    assert ball.graph.edge_count() == 18
    assert is_quasi_median(ball.graph).positive
    assert not ball.complete


def test_finite_product_ball_completes():
    ball = cayley_ball(Z2xZ3, 2)
    assert ball.complete
    assert ball.graph.n == 6
    assert ball.interior == frozenset(range(6))


def test_ball_nesting():
    small = set(cayley_ball(Z3_FREE_Z3, 1).words)
    big = set(cayley_ball(Z3_FREE_Z3, 2).words)
    assert small < big


def test_ball_matches_brute_force_enumeration():
    for pres, radius in ((FREE_PAIR, 3), (Z3_FREE_Z3, 2)):
        gens = [
            (v, e)
            for v in range(pres.gamma.n)
            for e in range(1, pres.groups[v].order)
        ]
        reachable = {()}
        for k in range(1, radius + 1):
            for combo in itertools.product(gens, repeat=k):
                reachable.add(reduce_word(pres, list(combo)))
        assert set(cayley_ball(pres, radius).words) == reachable


def test_ball_requires_positive_radius():
    with pytest.raises(DomainError):
        cayley_ball(Z2xZ3, 0)


def test_presentation_json_round_trip():
    obj = {
        "gamma": {"vertices": 2, "edges": [[0, 1]]},
        "groups": [{"cyclic": 2}, "infinite"],
    }
    pres = presentation_from_json(obj)
    assert pres.groups[0].order == 2
    assert pres.groups[1] is INFINITE
    w = word_from_json(pres, [[0, 1], [1, -2]])
    assert w == ((0, 1), (1, -2))
    assert word_to_json(w) == [[0, 1], [1, -2]]


def test_presentation_json_rejects_garbage():
    with pytest.raises(SchemaError):
        presentation_from_json({"groups": []})
    with pytest.raises(SchemaError):
        presentation_from_json(
            {"gamma": {"vertices": 1, "edges": []}, "groups": [{"cyclic": "x"}]}
        )
    pres = presentation_from_json(
        {"gamma": {"vertices": 1, "edges": []}, "groups": [{"cyclic": 3}]}
    )
    with pytest.raises(SchemaError):
        word_from_json(pres, [[0]])
    with pytest.raises(SchemaError):
        word_from_json(pres, "uv")
