"""Reduction chain tests: instance building, oracle extractions, the
end-to-end pipeline, lifts, and the concentrated/reducible classifier."""

import random
from fractions import Fraction

import pytest

from indsublab.counting import (
    count_cliques,
    count_cp_indsub,
    count_cphom,
)
from indsublab.enumerator import alternating_enumerator
from indsublab.errors import InvariantError, PreconditionError
from indsublab.graphs import (
    HColoring,
    canonical_key,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    enumerate_canonical_graphs,
    identity_coloring,
    independent_set,
    make_graph,
    path_graph,
    random_graph,
)
from indsublab.params import builtin_parameter, table_parameter
from indsublab.reductions import (
    Classification,
    LiftSpec,
    OracleHandle,
    check_lift_identity,
    classify_concentrated_reducible,
    clique_to_cphom_instance,
    count_cliques_via_indsub,
    cphom_from_cpindsub_oracle,
    cpindsub_from_indsub_oracle,
    edge_filtered_host,
    find_lift_spec,
    lift_instance,
    lift_parameter,
    scatter_membership,
    subset_moebius,
    subset_zeta,
)


def test_instance_size_and_identity():
    K22 = complete_bipartite(2, 2)
    col = clique_to_cphom_instance(2, K22, complete_graph(3))
    assert col.host.n == 2 * 2 * 3 + (4 - 4) == 12
    assert count_cphom(col) == 3
    col0 = clique_to_cphom_instance(2, K22, independent_set(3))
    assert count_cphom(col0) == 0
    with pytest.raises(PreconditionError):
        clique_to_cphom_instance(1, K22, complete_graph(3))
    with pytest.raises(PreconditionError):
        clique_to_cphom_instance(2, path_graph(4), complete_graph(3))


def test_instance_with_larger_pattern():
    # pattern strictly containing the biclique: same-side pattern edges add
    # complete connections and must not change the count
    rng = random.Random(23)
    K4 = complete_graph(4)
    for _ in range(6):
        G = random_graph(rng, rng.randint(3, 5))
        col = clique_to_cphom_instance(2, K4, G)
        assert col.host.n == 2 * 2 * G.n
        assert count_cphom(col) == count_cliques(G, 2)


def test_instance_identity_random():
    rng = random.Random(24)
    K22 = complete_bipartite(2, 2)
    K33 = complete_bipartite(3, 3)
    for _ in range(8):
        G = random_graph(rng, rng.randint(2, 5))
        assert count_cphom(clique_to_cphom_instance(2, K22, G)) == count_cliques(G, 2)
    for _ in range(3):
        G = random_graph(rng, rng.randint(2, 3))
        assert count_cphom(clique_to_cphom_instance(3, K33, G)) == count_cliques(G, 3)


def test_cphom_extraction():
    phi_edges = builtin_parameter("edge-power:1")
    col = HColoring(complete_bipartite(2, 2), complete_graph(2), [0, 0, 1, 1])
    oracle = OracleHandle.cpindsub(phi_edges)
    got = cphom_from_cpindsub_oracle(col, oracle)
    assert got == 4  # cross edges
    assert oracle.call_count == 2  # one query per pattern edge subset

    conn = builtin_parameter("connected")
    col3 = identity_coloring(complete_graph(3))
    oracle3 = OracleHandle.cpindsub(conn)
    assert cphom_from_cpindsub_oracle(col3, oracle3) == 1
    assert oracle3.call_count == 8

    with pytest.raises(PreconditionError):
        cphom_from_cpindsub_oracle(
            identity_coloring(path_graph(3)),
            OracleHandle.cpindsub(phi_edges),
        )  # vanishing enumerator on the path


def test_cpindsub_from_indsub():
    phi_edges = builtin_parameter("edge-power:1")
    col = HColoring(complete_bipartite(2, 2), complete_graph(2), [0, 0, 1, 1])
    oracle = OracleHandle.indsub(phi_edges)
    got = cpindsub_from_indsub_oracle(phi_edges, col, oracle)
    assert got == count_cp_indsub(phi_edges, col) == 4
    assert oracle.call_count == 4  # 2^k class subsets

    # empty color class: inclusion-exclusion cancels to zero
    conn = builtin_parameter("connected")
    col_empty = HColoring(independent_set(2), independent_set(2), [0, 0])
    got = cpindsub_from_indsub_oracle(conn, col_empty, OracleHandle.indsub(conn))
    assert got == 0

    # single class: colorful sum is the parameter total over class vertices
    single = HColoring(independent_set(3), independent_set(1), [0, 0, 0])
    got = cpindsub_from_indsub_oracle(conn, single, OracleHandle.indsub(conn))
    assert got == count_cp_indsub(conn, single) == 3


def test_pipeline_end_to_end():
    disc = builtin_parameter("disconnected")
    K22 = complete_bipartite(2, 2)
    res = count_cliques_via_indsub(2, 4, disc, K22, complete_graph(4))
    assert res.count == 6
    assert count_cliques_via_indsub(2, 4, disc, K22, cycle_graph(5)).count == 5
    assert count_cliques_via_indsub(2, 4, disc, K22, independent_set(4)).count == 0

    rng = random.Random(25)
    for _ in range(6):
        n = rng.randint(3, 6)
        G = random_graph(rng, n)
        res = count_cliques_via_indsub(2, 4, disc, K22, G)
        assert res.count == count_cliques(G, 2)
        assert res.oracle.max_query_size <= 2 * 2 * n + 4
        assert all(size <= 2 * 2 * n + 4 for size, _ in res.oracle.log)


def test_moebius_zeta_roundtrip():
    rng = random.Random(26)
    vals = [rng.randint(-5, 5) for _ in range(16)]
    assert subset_zeta(subset_moebius(vals, 4), 4) == vals
    assert subset_moebius(subset_zeta(vals, 4), 4) == vals


def test_edge_filtered_host():
    disc = builtin_parameter("disconnected")
    col = clique_to_cphom_instance(2, complete_bipartite(2, 2), complete_graph(3))
    full = edge_filtered_host(col, col.pattern.mask)
    assert full.host == col.host
    none = edge_filtered_host(col, 0)
    assert none.host.edge_count == 0


def test_lift_parameter():
    K1, K2, IS2 = complete_graph(1), complete_graph(2), independent_set(2)
    cliq = builtin_parameter("clique")
    lifted = lift_parameter(cliq, LiftSpec(K2, (K1,)))
    assert lifted(complete_graph(3)) == 1
    assert lifted(path_graph(3)) == 0

    comp = builtin_parameter("components")
    lifted2 = lift_parameter(comp, LiftSpec(IS2, (K1,)))
    for k in (1, 2, 3):
        for cg in enumerate_canonical_graphs(k):
            assert lifted2(cg.graph) == comp(cg.graph) + 1

    conn = builtin_parameter("connected")
    lifted3 = lift_parameter(conn, LiftSpec(K2, (K1,)))
    for cg in enumerate_canonical_graphs(3):
        assert lifted3(cg.graph) == 1

    with pytest.raises(PreconditionError):
        lift_parameter(cliq, LiftSpec(K2, ()))


def test_lift_instance():
    K1, K2, IS2 = complete_graph(1), complete_graph(2), independent_set(2)
    spec = LiftSpec(K2, (K1,))
    colb = HColoring(complete_bipartite(2, 2), K2, [0, 0, 1, 1])
    ext = lift_instance(colb, spec)
    assert ext.pattern.n == 3 and ext.host.n == 5
    # companion vertices are joined to everything in the pattern
    assert all(ext.pattern.has_edge(2, v) for v in range(2))
    assert check_lift_identity(builtin_parameter("edge-power:1"), colb, spec)

    # identity lift: no parts
    spec_id = LiftSpec(complete_graph(1), ())
    col = identity_coloring(K2)
    ext_id = lift_instance(col, spec_id)
    assert ext_id.host.n == col.host.n and ext_id.pattern.n == col.pattern.n
    assert check_lift_identity(builtin_parameter("connected"), col, spec_id)

    comp = builtin_parameter("components")
    assert check_lift_identity(comp, identity_coloring(K2), LiftSpec(IS2, (K1,)))


def test_classify():
    disc = builtin_parameter("disconnected")
    got = classify_concentrated_reducible(disc, 6, 2, 1)
    assert got.kind == "concentrated"
    H = got.witness.graph
    from indsublab.graphs import contains_biclique

    assert contains_biclique(H, 2, 2)
    chi = alternating_enumerator(disc, H)
    assert int(chi) % 2 != 0

    const = table_parameter("const", 6, {})
    const.codomain_bound = lambda k: 0
    assert classify_concentrated_reducible(const, 6, 2, 1).kind == "trivial"

    isi = builtin_parameter("independent-set")
    assert classify_concentrated_reducible(isi, 6, 2, 1).kind in ("concentrated", "reducible")

    with pytest.raises(PreconditionError):
        classify_concentrated_reducible(disc, 5, 2, 1)  # 2 + 4 > 5


def test_scatter_membership():
    cliq = builtin_parameter("clique")
    spec = scatter_membership(cliq, lambda k: 2, 3)
    assert spec is not None
    assert spec.C.n == 2 and spec.C.edge_count == 1
    assert len(spec.parts) == 1 and spec.parts[0].n == 1
    lifted = lift_parameter(cliq, spec)
    vals = {lifted(cg.graph) for cg in enumerate_canonical_graphs(2)}
    assert len(vals) == 2

    const = table_parameter("const", 3, {})
    assert scatter_membership(const, lambda k: 2, 3) is None
    conn = builtin_parameter("connected")
    assert scatter_membership(conn, lambda k: 2, 3) is None
    assert scatter_membership(conn, {3: 2}, 3) is None  # table-style size map

    with pytest.raises(PreconditionError):
        scatter_membership(cliq, lambda k: 6, 3)


def test_reducible_branch_reachable():
    # a parameter trivial on the biclique-bearing classes but liftable:
    # nontrivial only through insertion, value 1 exactly on edgeless graphs
    # of size 5 -- at (k=5, p=2, t=0) concentration needs an edge witness
    isi = builtin_parameter("independent-set")
    spec = find_lift_spec(isi, 4, 1)
    assert spec is not None
    lifted = lift_parameter(isi, spec)
    vals = {lifted(cg.graph) for cg in enumerate_canonical_graphs(4)}
    assert len(vals) == 2
