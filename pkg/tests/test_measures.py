from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from branchdual import generate
from branchdual.embedding import EmbeddedGraph
from branchdual.graph import Multigraph
from branchdual.measures import (
    EdgeSubset,
    border,
    circuit_rank,
    cycle_basis,
    delta,
    delta_measure,
    mu,
    mu_measure,
    rank,
)
from oracles import border_size, forest_size, mu_value

C4 = generate.cycle(4)  # edge i joins vertices i and i + 1 (mod 4)
K4 = generate.complete(4, 0)


@st.composite
def hosts(draw, max_edges=8):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = generate.make_rng(seed)
    ends = generate.connected_graph(rng, int(rng.integers(1, max_edges + 1)))
    return Multigraph.from_edges(ends)


@st.composite
def host_and_subset(draw, max_edges=8):
    G = draw(hosts(max_edges))
    F = draw(st.sets(st.sampled_from(sorted(G.ends))))
    return G, frozenset(F)


# -- border ------------------------------------------------------------------------


def test_border_adjacent_pair_of_c4():
    assert border(C4, {0, 1}) == {0, 2}
    assert delta(C4, {0, 1}) == 2


def test_border_empty():
    assert border(C4, set()) == frozenset()


def test_border_star_of_k4():
    v = 0
    star = {e for e, (a, b) in K4.ends.items() if v in (a, b)}
    assert border(K4, star) == {1, 2, 3}


@settings(max_examples=200, deadline=None)
@given(host_and_subset())
def test_border_symmetric_and_matches_oracle(pair):
    G, F = pair
    rest = frozenset(G.ends) - F
    assert border(G, F) == border(G, rest)
    assert delta(G, F) == border_size(G.ends, F)


# -- rank and mu ------------------------------------------------------------------------


def test_rank_examples():
    assert rank(C4, ()) == 0
    assert rank(C4, C4.ends) == 3
    loop = Multigraph.from_edges({0: (0, 0)})
    assert rank(loop, {0}) == 0


@settings(max_examples=200, deadline=None)
@given(host_and_subset())
def test_rank_matches_exhaustive_forest(pair):
    G, F = pair
    assert rank(G, F) == forest_size(G.ends, F)


def test_mu_examples():
    assert mu(C4, {0, 1}) == 2
    assert mu(C4, {0, 2}) == 2
    assert mu(C4, ()) == 1
    assert mu(C4, C4.ends) == 1


@settings(max_examples=200, deadline=None)
@given(host_and_subset())
def test_mu_symmetric_and_matches_oracle(pair):
    G, F = pair
    assert mu(G, F) == mu(G, frozenset(G.ends) - F)
    assert mu(G, F) == mu_value(G.ends, F)


@settings(max_examples=100, deadline=None)
@given(hosts(), st.data())
def test_mu_is_submodular(G, data):
    edges = sorted(G.ends)
    X = frozenset(data.draw(st.sets(st.sampled_from(edges))))
    Y = frozenset(data.draw(st.sets(st.sampled_from(edges))))
    assert mu(G, X) + mu(G, Y) >= mu(G, X & Y) + mu(G, X | Y)


@pytest.mark.parametrize("make", [delta_measure, mu_measure])
def test_tables_match_pointwise(make):
    G = generate.complete(5, 1)
    f = make(G)
    elements = sorted(G.ends)
    table = f.evaluate_all(elements)
    for mask in range(0, 1 << len(elements), 37):
        F = frozenset(x for i, x in enumerate(elements) if mask >> i & 1)
        assert table[mask] == f.func(F)


# -- circuit rank and cycle bases -----------------------------------------------------


def test_circuit_rank_examples():
    assert circuit_rank(C4, C4.ends) == 1
    assert circuit_rank(C4, {0, 1, 2}) == 0
    loops = Multigraph.from_edges({0: (0, 0), 1: (0, 0)})
    assert circuit_rank(loops, {0, 1}) == 2


@settings(max_examples=200, deadline=None)
@given(host_and_subset())
def test_circuit_rank_is_size_minus_rank(pair):
    G, F = pair
    assert circuit_rank(G, F) == len(F) - rank(G, F)


def test_cycle_basis_examples():
    assert [set(c) for c in cycle_basis(C4, C4.ends).cycles] == [{0, 1, 2, 3}]
    assert len(cycle_basis(K4, K4.ends)) == 3
    assert len(cycle_basis(C4, {0, 1})) == 0


def _is_cycle(ends, C):
    """Connected and every vertex has even degree (loops count twice)."""
    deg = {}
    for e in C:
        for v in ends[e]:
            deg[v] = deg.get(v, 0) + 1
    if any(d % 2 for d in deg.values()):
        return False
    return forest_size(ends, C) == len(deg) - 1 and len(C) - forest_size(ends, C) == 1


@settings(max_examples=150, deadline=None)
@given(host_and_subset())
def test_cycle_basis_is_independent_cycles(pair):
    G, F = pair
    basis = cycle_basis(G, F)
    assert len(basis) == circuit_rank(G, F)
    for C in basis.cycles:
        assert set(C) <= F
        assert _is_cycle(G.ends, C)
    if len(basis) <= 5:
        vecs = [frozenset(C) for C in basis.cycles]
        for k in range(1, len(vecs) + 1):
            for sub in combinations(vecs, k):
                acc = frozenset()
                for v in sub:
                    acc = acc ^ v
                assert acc


def test_edge_subset_validates_members():
    EdgeSubset(C4, frozenset({0, 1}))
    assert EdgeSubset(C4, frozenset({0})).complement.members == {1, 2, 3}
    with pytest.raises(ValueError):
        EdgeSubset(C4, frozenset({9}))


def test_measures_accept_embedded_and_abstract_hosts():
    assert isinstance(C4, EmbeddedGraph)
    abstract = C4.skeleton()
    for F in ({0}, {0, 1}, {0, 2}):
        assert mu(C4, F) == mu(abstract, F)
        assert delta(C4, F) == delta(abstract, F)
    assert np.array_equal(
        delta_measure(C4).evaluate_all([0, 1, 2, 3]), delta_measure(abstract).evaluate_all([0, 1, 2, 3])
    )
