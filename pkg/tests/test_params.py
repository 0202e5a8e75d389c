"""Parameter tests: built-in values, the image/indicator algebra, codomain
normalization, and monotonicity checks."""

import json
import random
from fractions import Fraction
from math import comb

import pytest

from indsublab.counting import count_indsub
from indsublab.errors import PreconditionError
from indsublab.graphs import (
    canonical_key,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    enumerate_canonical_graphs,
    independent_set,
    make_graph,
    path_graph,
    random_graph,
    relabel,
    star_graph,
    to_graph6,
)
from indsublab.params import (
    GraphParameter,
    builtin_parameter,
    evaluate,
    image_on,
    indicator_decomposition,
    is_edge_monotone_on,
    is_nontrivial_on,
    normalize_codomain,
    random_monotone_table_parameter,
    standard_parameters,
    table_parameter,
)


def test_builtin_values():
    K3 = complete_graph(3)
    assert builtin_parameter("connected")(K3) == 1
    assert builtin_parameter("connected")(disjoint_union(K3, K3)) == 0
    assert builtin_parameter("components")(independent_set(4)) == 4
    assert builtin_parameter("max-degree")(cycle_graph(5)) == 2
    assert builtin_parameter("chromatic")(K3) == 3
    assert builtin_parameter("chromatic")(complete_bipartite(2, 3)) == 2
    assert builtin_parameter("chromatic")(cycle_graph(5)) == 3
    assert builtin_parameter("independence")(cycle_graph(5)) == 2
    assert builtin_parameter("edge-power:2")(K3) == 9
    assert builtin_parameter("universal-vertices")(K3) == 3
    assert builtin_parameter("universal-vertices")(star_graph(4)) == 1
    assert builtin_parameter("universal-vertices")(complete_graph(2)) == 1
    assert builtin_parameter("hamiltonian-paths")(path_graph(4)) == 1
    assert builtin_parameter("hamiltonian-paths")(K3) == 3
    assert builtin_parameter("hamiltonian-paths")(complete_graph(4)) == 12
    assert builtin_parameter("perfect-matchings")(complete_graph(4)) == 3
    assert builtin_parameter("perfect-matchings")(K3) == 0
    assert builtin_parameter("clique")(K3) == 1
    assert builtin_parameter("independent-set")(K3) == 0
    assert builtin_parameter("edge-parity")(K3) == 1
    with pytest.raises(PreconditionError):
        builtin_parameter("no-such-parameter")


def test_image_on():
    assert image_on(builtin_parameter("connected"), 3) == {0, 1}
    assert image_on(builtin_parameter("edge-power:1"), 3) == {0, 1, 2, 3}
    assert image_on(builtin_parameter("chromatic"), 3) == {1, 2, 3}
    assert not is_nontrivial_on(builtin_parameter("connected"), 1)
    assert is_nontrivial_on(builtin_parameter("connected"), 3)
    assert is_nontrivial_on(builtin_parameter("edge-power:1"), 2)


def test_indicator_decomposition():
    conn = builtin_parameter("connected")
    dec = indicator_decomposition(conn, 3)
    assert [b for b, _ in dec] == [0, 1]
    P3 = path_graph(3)
    assert sum(b * ind(P3) for b, ind in dec) == conn(P3) == 1
    edges = builtin_parameter("edge-power:1")
    dec2 = indicator_decomposition(edges, 2)
    assert [b for b, _ in dec2] == [0, 1]
    assert sum(b * ind(complete_graph(2)) for b, ind in dec2) == 1
    # reconstruction over all classes, k <= 4
    for phi in (conn, edges, builtin_parameter("chromatic")):
        for k in range(1, 5):
            dec = indicator_decomposition(phi, k)
            for cg in enumerate_canonical_graphs(k):
                assert sum(b * ind(cg.graph) for b, ind in dec) == phi(cg.graph)


def test_normalize_codomain_cases():
    conn = builtin_parameter("connected")
    phi1, rec1 = normalize_codomain(conn, [0, 1])
    G = path_graph(4)
    assert phi1(G) == conn(G)
    assert rec1(2, 4, 5) == 5  # identity recovery

    pm1 = GraphParameter("edge-parity-pm1", lambda g: 2 * (g.edge_count % 2) - 1)
    phi2, rec2 = normalize_codomain(pm1, [-1, 1])
    assert phi2.codomain_bound(3) == 2
    for m, n, k in [(7, 5, 2), (0, 4, 2)]:
        assert rec2(k, n, m) == m - comb(n, k)

    halves = GraphParameter("edge-halves", lambda g: Fraction(g.edge_count % 3, 2))
    phi3, rec3 = normalize_codomain(halves, [0, Fraction(1, 2), 1])
    assert phi3.codomain_bound(3) == 2
    assert rec3(2, 5, 8) == 4  # m / 2


def test_normalize_roundtrip_random():
    phi = GraphParameter("edges-mod3-shift", lambda g: Fraction(g.edge_count % 3 - 1))
    phi_prime, recover = normalize_codomain(phi, [-1, 0, 1])
    rng = random.Random(9)
    for _ in range(12):
        n = rng.randint(3, 7)
        G = random_graph(rng, n)
        for k in range(1, 4):
            m = count_indsub(phi_prime, k, G)
            assert recover(k, n, m) == count_indsub(phi, k, G)


def test_edge_monotonicity():
    assert is_edge_monotone_on(builtin_parameter("independence"), 4)
    assert not is_edge_monotone_on(builtin_parameter("edge-power:1"), 3)
    assert not is_edge_monotone_on(builtin_parameter("connected"), 3)
    assert is_edge_monotone_on(builtin_parameter("disconnected"), 3)


def test_monotone_flags_imply_gap():
    for phi in standard_parameters():
        if not phi.declared_edge_monotone:
            continue
        for k in range(2, 6):
            assert is_edge_monotone_on(phi, k), phi.name
            if is_nontrivial_on(phi, k):
                assert evaluate(phi, independent_set(k)) > evaluate(phi, complete_graph(k))


def test_iso_invariance_random_relabelings():
    rng = random.Random(21)
    params = standard_parameters()
    for k in range(1, 6):
        for cg in enumerate_canonical_graphs(k):
            base = {phi.name: evaluate(phi, cg.graph) for phi in params}
            for _ in range(20):
                perm = list(range(k))
                rng.shuffle(perm)
                moved = relabel(cg.graph, perm)
                for phi in params:
                    assert evaluate(phi, moved) == base[phi.name]


def test_table_parameter(tmp_path):
    k3key = canonical_key(complete_graph(3))
    phi = table_parameter("spike", 3, {k3key: Fraction(5, 2)})
    assert phi(complete_graph(3)) == Fraction(5, 2)
    assert phi(make_graph(3, [(0, 2), (1, 2), (0, 1)])) == Fraction(5, 2)
    assert phi(path_graph(3)) == 0
    assert phi(complete_graph(4)) == 0  # off-size default

    path = tmp_path / "table.json"
    path.write_text(
        json.dumps({"k": 3, "values": {to_graph6(complete_graph(3)): "5/2"}})
    )
    loaded = builtin_parameter(f"table:{path}")
    assert loaded(complete_graph(3)) == Fraction(5, 2)
    assert loaded(path_graph(3)) == 0


def test_random_monotone_table_parameter():
    rng = random.Random(31)
    for _ in range(10):
        phi = random_monotone_table_parameter(rng, 4)
        assert is_edge_monotone_on(phi, 4)
        assert evaluate(phi, independent_set(4)) == 1
        assert evaluate(phi, complete_graph(4)) == 0


def test_caps():
    with pytest.raises(PreconditionError):
        image_on(builtin_parameter("connected"), 7)
    with pytest.raises(PreconditionError):
        is_edge_monotone_on(builtin_parameter("connected"), 6)
    with pytest.raises(PreconditionError):
        builtin_parameter("chromatic")(complete_graph(11))
