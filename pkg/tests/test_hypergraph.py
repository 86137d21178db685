import pytest
from hypothesis import given, settings, strategies as st

from branchdual import generate
from branchdual.decomposition import BranchTree, caterpillar, inc_lift, width
from branchdual.embedding import dual, euler_genus, is_isomorphic, trace_faces
from branchdual.errors import PreconditionError
from branchdual.hypergraph import (
    check_lift,
    check_lift_dual,
    dual_stars_are_cycles,
    euler_genus_h,
    from_graph,
    has_coinciding_endpoints,
    hyper_border,
    hyper_bw,
    hyper_classify,
    hyper_delta,
    hyper_delta_measure,
    hyper_dual,
    is_connected,
    radial_graph,
    random_hypergraph,
    theorem2_check,
    to_graph,
)
from branchdual.measures import delta_measure
from branchdual.solver import exact_bw
from builders import hypergraph


@st.composite
def random_hypergraphs(draw, max_incidences=12):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_hypergraph(generate.make_rng(seed), max_incidences, 2)


@st.composite
def random_tree_over(draw, elements):
    """Random cubic tree by inserting the elements on random edges."""
    elements = list(elements)
    if len(elements) <= 2:
        return caterpillar(elements)
    order = draw(st.permutations(elements))
    adj = {0: [3], 1: [3], 2: [3], 3: [0, 1, 2]}
    leaves = {order[0]: 0, order[1]: 1, order[2]: 2}
    for x in order[3:]:
        edges = sorted({(min(u, v), max(u, v)) for u in adj for v in adj[u]})
        u, v = draw(st.sampled_from(edges))
        mid, leaf = len(adj), len(adj) + 1
        adj[u][adj[u].index(v)] = mid
        adj[v][adj[v].index(u)] = mid
        adj[mid] = [u, v, leaf]
        adj[leaf] = [mid]
        leaves[x] = leaf
    return BranchTree(adj, leaves)


# -- incidence graphs ------------------------------------------------------------------------


def test_graph_as_hypergraph_is_subdivision():
    H = from_graph(generate.cycle(3))
    I = H.incidence
    assert len(I.vertices) == 6 and len(I.edges) == 6
    assert all(H.arity(h) == 2 for h in H.hyperedges)
    assert euler_genus_h(H) == 0


def test_single_arity_three_star():
    H = hypergraph(3, [[0, 1, 2]])
    I = H.incidence
    (h,) = H.hyperedges
    assert H.arity(h) == 3 and len(I.edges) == 3
    assert sorted(I.degree(v) for v in I.vertices) == [1, 1, 1, 3]


def test_two_stars_sharing_a_point_is_a_path():
    H = hypergraph(3, [[0, 1], [1, 2]])
    I = H.incidence
    assert len(I.vertices) == 5 and len(I.edges) == 4
    assert sorted(I.degree(v) for v in I.vertices) == [1, 1, 2, 2, 2]


def test_round_trip_through_graphs():
    G = generate.complete(5, 1)
    H = from_graph(G)
    back, edge_of_center = to_graph(H)
    mapping = {e: edge_of_center[c] for e, c in zip(sorted(G.edges), H.hyperedges)}
    assert is_isomorphic(G, back, mapping)


# -- duals -------------------------------------------------------------------------------------------


def test_dual_of_triangle_is_dipole():
    corr = hyper_dual(from_graph(generate.cycle(3)))
    G, _ = to_graph(corr.dual)
    assert is_isomorphic(G, generate.dipole(3))


def test_dual_of_arity_one_star():
    H = hypergraph(1, [[0]])
    corr = hyper_dual(H)
    D = corr.dual
    (h,) = D.hyperedges
    assert D.arity(h) == 1
    assert len(D.points) == len(trace_faces(H.incidence)) == 1


def test_graph_case_k4_agrees_with_graph_dual():
    K4 = generate.complete(4, 0)
    G, _ = to_graph(hyper_dual(from_graph(K4)).dual)
    assert is_isomorphic(G, dual(K4).dual_graph)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_graph_case_agrees_with_graph_dual(seed):
    G = generate.random_graph(generate.make_rng(seed), 9, 2, "connected")
    Hs = hyper_dual(from_graph(G)).dual
    D, _ = to_graph(Hs)
    assert is_isomorphic(D, dual(G).dual_graph)


def test_radial_graph_is_a_quadrangulation():
    H = hypergraph(4, [[0, 1, 2, 3], [0, 1], [2, 3]], genus=1, seed=3)
    R, _, _ = radial_graph(H.incidence)
    faces = trace_faces(R)
    assert euler_genus(R) == euler_genus_h(H)
    assert len(faces) == len(H.incidence.edges)
    assert all(len(f.boundary) == 4 for f in faces)


@settings(max_examples=80, deadline=None)
@given(random_hypergraphs())
def test_dual_preserves_arity_genus_and_counts(H):
    corr = hyper_dual(H)
    D = corr.dual
    assert euler_genus_h(D) == euler_genus_h(H)
    assert sorted(corr.star_bijection) == sorted(H.hyperedges)
    assert sorted(corr.star_bijection.values()) == sorted(D.hyperedges)
    for h in H.hyperedges:
        assert D.arity(corr.star_bijection[h]) == H.arity(h)
    assert len(D.points) == len(trace_faces(H.incidence))
    assert dual_stars_are_cycles(H)


@settings(max_examples=60, deadline=None)
@given(random_hypergraphs())
def test_double_dual_is_isomorphic(H):
    # the composed half-edge map may rotate half-edges within a star, since
    # each dual half-edge sits at a corner between two original ones
    once = hyper_dual(H)
    twice = hyper_dual(once.dual)
    assert is_isomorphic(H.incidence, twice.dual.incidence)
    star_of = {z: h for h in twice.dual.hyperedges for z in twice.dual.half_edges(h)}
    for h in H.hyperedges:
        target = twice.star_bijection[once.star_bijection[h]]
        for z in H.half_edges(h):
            assert star_of[twice.half_edge_bijection[once.half_edge_bijection[z]]] == target


# -- borders and classification ------------------------------------------------------------------


def test_border_of_one_of_two_sharing_stars():
    H = hypergraph(3, [[0, 1], [1, 2]])
    h = H.hyperedges[0]
    assert hyper_border(H, {h}) == {1}
    assert hyper_delta(H, {h}) == 1
    assert hyper_border(H, set()) == frozenset()


def test_border_on_c4_as_hypergraph():
    H = from_graph(generate.cycle(4))
    h0, h1 = H.hyperedges[:2]
    assert hyper_delta(H, {h0, h1}) == 2


def test_border_rejects_non_hyperedges():
    H = hypergraph(3, [[0, 1], [1, 2]])
    with pytest.raises(PreconditionError):
        hyper_border(H, {0})


def test_classification():
    L = hypergraph(2, [[0], [0, 1], [0, 1]])
    assert hyper_classify(L, L.hyperedges[0]) == "loop"
    P = hypergraph(3, [[0, 1], [1, 2]])
    assert {hyper_classify(P, h) for h in P.hyperedges} == {"bridge"}
    C = from_graph(generate.cycle(4))
    assert {hyper_classify(C, h) for h in C.hyperedges} == {"ordinary"}


def test_coinciding_endpoints_flag():
    H = hypergraph(2, [[0, 0, 1], [0, 1]])
    h = H.hyperedges[0]
    assert has_coinciding_endpoints(H, h)
    assert hyper_classify(H, h) == "ordinary"
    assert not has_coinciding_endpoints(H, H.hyperedges[1])


def test_hyper_bw_matches_graph_bw():
    for G in (generate.cycle(4), generate.complete(4, 0), generate.complete(5, 1)):
        assert hyper_bw(from_graph(G)).value == exact_bw(G).value


# -- lifting decompositions ----------------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_lift_keeps_width(data):
    H = data.draw(random_hypergraphs(max_incidences=14))
    if len(H.hyperedges) > 6 or max(H.arity(h) for h in H.hyperedges) > 4:
        return
    T = data.draw(random_tree_over(H.hyperedges))
    trees = {}
    for h in H.hyperedges:
        Th = data.draw(random_tree_over(H.half_edges(h)))
        attach = data.draw(st.sampled_from(Th.edges)) if Th.edges else None
        trees[h] = (Th, attach)
    assert check_lift(H, T, trees).passed
    lifted = inc_lift(T, H, trees)
    assert width(lifted, delta_measure(H.incidence)) == width(T, hyper_delta_measure(H))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_dual_lift_agrees_on_the_tree_splits(data):
    H = data.draw(random_hypergraphs())
    T = data.draw(random_tree_over(H.hyperedges))
    rep = check_lift_dual(H, T)
    assert rep.measured["tree_splits_equal"]


def test_dual_lift_full_equality_fails_on_projective_digon():
    # two parallel arity-2 stars; I(H) is a 4-cycle with a single face
    H = hypergraph(2, [[0, 1], [0, 1]], genus=1)
    assert len(trace_faces(H.incidence)) == 1
    rep = check_lift_dual(H, caterpillar(H.hyperedges))
    assert rep.measured == {"graph_dual_width": 1, "hyper_dual_width": 2, "tree_splits_equal": True}
    assert not rep.passed


@settings(max_examples=100, deadline=None)
@given(random_hypergraphs())
def test_dual_lift_full_equality_holds_on_the_sphere(H):
    if euler_genus_h(H) == 0:
        assert check_lift_dual(H, hyper_bw(H).tree).passed


# -- the hypergraph theorem ----------------------------------------------------------------------


def test_theorem2_c4_and_k4():
    for G in (generate.cycle(4), generate.complete(4, 0)):
        rep = theorem2_check(from_graph(G))
        assert rep.passed
        assert rep.measured["genus"] == 0
        assert rep.measured["bw_dual"] == rep.measured["bw"]


def test_theorem2_arity_three_on_projective_plane():
    H = hypergraph(3, [[0, 1, 2], [0, 1], [1, 2], [2, 0]], genus=1, seed=2)
    assert euler_genus_h(H) == 1
    rep = theorem2_check(H)
    assert rep.passed
    assert rep.measured["bw_dual"] <= rep.measured["bw"] + 1


def test_theorem2_rejects_bridge_hyperedges():
    with pytest.raises(PreconditionError):
        theorem2_check(hypergraph(3, [[0, 1], [1, 2]]))


@settings(max_examples=60, deadline=None)
@given(random_hypergraphs())
def test_theorem2_on_random_hypergraphs(H):
    assert is_connected(H)
    rep = theorem2_check(H)
    assert rep.passed, rep
