import pytest
from hypothesis import given, settings, strategies as st

from branchdual import generate
from branchdual.embedding import (
    EmbeddedGraph,
    classify_edge,
    connected_components,
    contract,
    delete,
    dual,
    euler_genus,
    is_isomorphic,
    is_orientable,
    trace_faces,
)
from branchdual.errors import EmbeddingError, PreconditionError
from branchdual.lemmas import check_no_bridge_dual


def one_loop(sign):
    return EmbeddedGraph({0: (0, 1)}, {0: (0, 1, sign)})


def path(n_edges):
    rotation = {0: (0,)}
    for v in range(1, n_edges):
        rotation[v] = (2 * v - 1, 2 * v)
    rotation[n_edges] = (2 * n_edges - 1,)
    return EmbeddedGraph(rotation, {e: (2 * e, 2 * e + 1, 1) for e in range(n_edges)})


def disjoint_union(G, H):
    shift_v = max(G.rotation) + 1
    shift_d = 2 * (max(G.edges) + 1)
    shift_e = max(G.edges) + 1
    rotation = dict(G.rotation)
    rotation.update({v + shift_v: tuple(d + shift_d for d in ds) for v, ds in H.rotation.items()})
    edges = dict(G.edges)
    edges.update({e + shift_e: (a + shift_d, b + shift_d, s) for e, (a, b, s) in H.edges.items()})
    return EmbeddedGraph(rotation, edges)


@st.composite
def embedded_graphs(draw, max_edges=10, kind="connected"):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = generate.make_rng(seed)
    return generate.random_graph(rng, max_edges, 2, kind, min_edges=1)


# -- validation ---------------------------------------------------------------


def test_rejects_dart_in_two_vertices():
    with pytest.raises(EmbeddingError):
        EmbeddedGraph({0: (0, 1), 1: (1,)}, {0: (0, 1, 1)})


def test_rejects_unpaired_dart():
    with pytest.raises(EmbeddingError):
        EmbeddedGraph({0: (0, 1, 2)}, {0: (0, 1, 1)})


def test_rejects_bad_sign():
    with pytest.raises(EmbeddingError):
        EmbeddedGraph({0: (0,), 1: (1,)}, {0: (0, 1, 0)})


# -- faces and genus ------------------------------------------------------------


def test_triangle_has_two_faces():
    assert len(trace_faces(generate.cycle(3))) == 2


def test_positive_loop_has_two_faces():
    assert len(trace_faces(one_loop(1))) == 2


def test_negative_loop_has_one_face():
    assert len(trace_faces(one_loop(-1))) == 1


def test_faces_cover_every_flag_once():
    G = generate.complete(5, 1)
    fs = trace_faces(G)
    assert len(fs.face_of) == 4 * len(G.edges)
    walked = [f for face in fs for f in face.boundary]
    assert len(walked) == len(set(walked)) == 2 * len(G.edges)
    assert all(fs.face_of[f] == face.id for face in fs for f in face.boundary)


def test_face_tracing_is_deterministic():
    G = generate.torus_grid()
    assert trace_faces(G) == trace_faces(G)


def test_genus_triangle():
    assert euler_genus(generate.cycle(3)) == 0


def test_genus_negative_loop():
    assert euler_genus(one_loop(-1)) == 1
    assert not is_orientable(one_loop(-1))


def test_genus_k5_projective():
    G = generate.complete(5, 1)
    assert len(G.edges) == 10
    assert euler_genus(G) == 1


def test_genus_torus_grid():
    G = generate.torus_grid()
    assert euler_genus(G) == 2
    assert is_orientable(G)


@settings(max_examples=150, deadline=None)
@given(embedded_graphs())
def test_orientable_genus_is_even(G):
    assert euler_genus(G) >= 0
    if is_orientable(G):
        assert euler_genus(G) % 2 == 0


# -- duals -------------------------------------------------------------------------


def test_dual_of_triangle_is_dipole():
    D = dual(generate.cycle(3)).dual_graph
    assert len(D.vertices) == 2
    assert all(u != v for u, v in D.ends.values())
    assert is_isomorphic(D, generate.dipole(3))


def test_k4_is_self_dual():
    K4 = generate.complete(4, 0)
    assert is_isomorphic(dual(K4).dual_graph, K4)


def test_dual_of_positive_loop_is_bridge():
    D = dual(one_loop(1)).dual_graph
    assert len(D.vertices) == 2
    assert classify_edge(D, 0) == "bridge"


def test_dual_of_negative_loop_is_negative_loop():
    D = dual(one_loop(-1)).dual_graph
    assert len(D.vertices) == 1 and euler_genus(D) == 1


def test_dual_of_disconnected_graph_is_refused():
    C3 = generate.cycle(3)
    with pytest.raises(PreconditionError):
        dual(disjoint_union(C3, C3))


def test_dual_counts():
    G = generate.complete(5, 1)
    corr = dual(G)
    D = corr.dual_graph
    assert len(D.vertices) == len(trace_faces(G))
    assert sorted(corr.edge_bijection) == sorted(corr.edge_bijection.values()) == sorted(G.edges)
    assert len(corr.vertex_of_face) == len(trace_faces(G))


@settings(max_examples=150, deadline=None)
@given(embedded_graphs())
def test_double_dual_is_isomorphic(G):
    once = dual(G)
    twice = dual(once.dual_graph)
    assert euler_genus(once.dual_graph) == euler_genus(G)
    composed = {e: twice.edge_bijection[once.edge_bijection[e]] for e in G.edges}
    assert composed == {e: e for e in G.edges}
    assert is_isomorphic(G, twice.dual_graph, composed)


@settings(max_examples=100, deadline=None)
@given(embedded_graphs())
def test_loopless_dual_has_no_bridges(G):
    if all(u != v for u, v in G.ends.values()):
        assert check_no_bridge_dual(G).passed


# -- minor operations ---------------------------------------------------------------


def test_contract_triangle_gives_dipole():
    H = contract(generate.cycle(3), 0)
    assert is_isomorphic(H, generate.dipole(2))


def test_contract_dipole_gives_loop():
    H = contract(generate.dipole(2), 0)
    assert len(H.vertices) == 1 and list(H.edges) == [1]
    assert classify_edge(H, 1) == "loop"
    assert euler_genus(H) == 0


def test_contract_keeps_edge_ids():
    H = contract(generate.cycle(4), 0)
    assert sorted(H.edges) == [1, 2, 3]
    assert is_isomorphic(H, generate.cycle(3), None)


def test_contract_loop_is_refused():
    with pytest.raises(PreconditionError):
        contract(one_loop(1), 0)


def test_contract_negative_edge_keeps_genus():
    G = generate.complete(5, 1)
    assert any(s == -1 for _, _, s in G.edges.values())
    for e in G.edges:
        assert euler_genus(contract(G, e)) == 1


@settings(max_examples=150, deadline=None)
@given(embedded_graphs(), st.data())
def test_contract_preserves_genus(G, data):
    non_loops = [e for e, (u, v) in G.ends.items() if u != v]
    if not non_loops:
        return
    e = data.draw(st.sampled_from(non_loops))
    H = contract(G, e)
    assert euler_genus(H) == euler_genus(G)
    assert len(H.vertices) == len(G.vertices) - 1
    assert sorted(H.edges) == sorted(set(G.edges) - {e})


def test_delete_from_triangle_gives_path():
    H = delete(generate.cycle(3), 0)
    assert len(H.vertices) == 3 and euler_genus(H) == 0
    assert [classify_edge(H, e) for e in H.edges] == ["bridge", "bridge"]


def test_delete_negative_loop_drops_genus():
    H = delete(one_loop(-1), 0)
    assert len(H.vertices) == 1 and not H.edges
    assert euler_genus(H) == 0


def test_delete_from_k4_stays_planar():
    assert euler_genus(delete(generate.complete(4, 0), 0)) == 0


def test_delete_unknown_edge():
    with pytest.raises(PreconditionError):
        delete(generate.cycle(3), 7)


@settings(max_examples=150, deadline=None)
@given(embedded_graphs(), st.data())
def test_delete_does_not_raise_genus(G, data):
    e = data.draw(st.sampled_from(sorted(G.edges)))
    assert euler_genus(delete(G, e)) <= euler_genus(G)


@settings(max_examples=60, deadline=None)
@given(embedded_graphs(kind="bridgeless"), st.data())
def test_ids_stable_under_operation_sequences(G, data):
    corr = dual(G)
    H = G
    for _ in range(3):
        non_loops = [e for e, (u, v) in H.ends.items() if u != v]
        if not non_loops:
            break
        if data.draw(st.booleans()):
            H = contract(H, data.draw(st.sampled_from(non_loops)))
        else:
            H = delete(H, data.draw(st.sampled_from(sorted(H.edges))))
    assert set(H.edges) <= set(G.edges)
    for e in H.edges:
        assert H.edges[e][:2] == G.edges[e][:2]
        assert corr.edge_bijection[e] in corr.dual_graph.edges


# -- classification and components ------------------------------------------------------


def test_classify_loop():
    assert classify_edge(one_loop(1), 0) == "loop"


def test_classify_path_middle_is_bridge():
    assert classify_edge(path(3), 1) == "bridge"


def test_classify_cycle_edges_ordinary():
    C4 = generate.cycle(4)
    assert {classify_edge(C4, e) for e in C4.edges} == {"ordinary"}


def test_classify_unknown_edge():
    with pytest.raises(PreconditionError):
        classify_edge(generate.cycle(3), 9)


def test_components():
    C3 = generate.cycle(3)
    assert connected_components(C3)[0] == 1
    count, labels = connected_components(disjoint_union(C3, C3))
    assert count == 2
    assert labels[0] == labels[1] == labels[2] != labels[3]
    assert connected_components(EmbeddedGraph({}, {}))[0] == 0
