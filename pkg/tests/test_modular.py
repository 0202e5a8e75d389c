"""Modular counting tests: residue wrappers, clique padding recovery, the
residue pipeline, and the SAT gadget chain."""

import random

import pytest

from indsublab.counting import count_cliques, indsub_value
from indsublab.errors import InvariantError, PreconditionError
from indsublab.graphs import (
    complete_bipartite,
    complete_graph,
    independent_set,
    random_graph,
)
from indsublab.modular import (
    Cnf3,
    coloring_to_clique_graph,
    count_valid_proper_colorings,
    divisibility_oracle,
    mod_p_clique_via_indsub,
    numclique_from_modclique,
    parse_dimacs,
    residue_oracle,
    sat_to_coloring_graph,
)
from indsublab.params import builtin_parameter
from indsublab.reductions import OracleHandle


def test_residue_and_divisibility_wrappers():
    phi = builtin_parameter("clique")
    base = OracleHandle.indsub(phi)
    num = residue_oracle(base, 2)
    div = divisibility_oracle(base, 2)
    K3 = complete_graph(3)
    # 3 two-cliques in K_3
    assert num.query(K3, 2) == 1
    assert div.query(K3, 2) is False
    assert num.query(independent_set(3), 2) == 0
    assert div.query(independent_set(3), 2) is True
    conn = builtin_parameter("connected")
    base3 = OracleHandle.indsub(conn)
    assert residue_oracle(base3, 3).query(complete_graph(4), 3) == 1
    with pytest.raises(PreconditionError):
        residue_oracle(base, 4)


def test_numclique_from_modclique():
    def oracle(p):
        return lambda G, k: count_cliques(G, k) % p == 0

    assert numclique_from_modclique(complete_graph(3), 2, 2, oracle(2)) == 1
    assert numclique_from_modclique(independent_set(3), 2, 3, oracle(3)) == 0
    assert numclique_from_modclique(complete_graph(4), 3, 5, oracle(5)) == 4

    rng = random.Random(33)
    for _ in range(20):
        n = rng.randint(3, 7)
        G = random_graph(rng, n)
        k = rng.randint(2, 3)
        for p in (2, 3, 5):
            assert numclique_from_modclique(G, k, p, oracle(p)) == count_cliques(G, k) % p

    broken = lambda G, k: True
    with pytest.raises(InvariantError):
        numclique_from_modclique(complete_graph(3), 2, 2, broken)


def test_mod_pipeline():
    disc = builtin_parameter("disconnected")
    isi = builtin_parameter("independent-set")
    K22 = complete_bipartite(2, 2)
    r, oracle = mod_p_clique_via_indsub(2, 4, disc, K22, complete_graph(4), 5)
    assert r == 1  # 6 mod 5
    assert oracle.call_count > 0
    r, _ = mod_p_clique_via_indsub(2, 4, disc, K22, complete_graph(4), 2)
    assert r == 0
    r, _ = mod_p_clique_via_indsub(2, 4, isi, K22, complete_graph(4), 3)
    assert r == 0
    for p in (2, 3, 5):
        r, _ = mod_p_clique_via_indsub(2, 4, isi, K22, independent_set(4), p)
        assert r == 0

    # vanishing coefficient mod 3: chi-hat(disconnected, K_{2,2}) = 3
    with pytest.raises(PreconditionError):
        mod_p_clique_via_indsub(2, 4, disc, K22, complete_graph(4), 3)


def test_mod_pipeline_matches_exact():
    rng = random.Random(34)
    disc = builtin_parameter("disconnected")
    isi = builtin_parameter("independent-set")
    K22 = complete_bipartite(2, 2)
    for _ in range(5):
        n = rng.randint(3, 6)
        G = random_graph(rng, n)
        want = count_cliques(G, 2)
        for p, phi in ((2, disc), (3, isi), (5, disc)):
            r, _ = mod_p_clique_via_indsub(2, 4, phi, K22, G, p)
            assert r == want % p


def test_cnf_and_dimacs():
    cnf = Cnf3(3, [(1, -2, 3)])
    assert cnf.m == 1
    assert len(cnf.satisfying_assignments()) == 7
    with pytest.raises(PreconditionError):
        Cnf3(2, [(1, 2)])
    with pytest.raises(PreconditionError):
        Cnf3(2, [(1, 2, 5)])
    text = "c comment\np cnf 3 2\n1 -2 3 0\n-1 2 3 0\n"
    parsed = parse_dimacs(text)
    assert parsed.n == 3 and parsed.m == 2
    with pytest.raises(ValueError):
        parse_dimacs("1 2 3 0\n")


def test_gadget_census_and_valid_colorings():
    cnf = Cnf3(3, [(1, 2, 3)])
    gadget = sat_to_coloring_graph(cnf)
    assert gadget.graph.n == 3 + 2 * 3 + 6 * 1 == 15
    assert gadget.roles[0] == "T-anchor"
    assert count_valid_proper_colorings(gadget) == 7
    assert len(gadget.valid_colorings) == 7

    # force a unique satisfying assignment with unit-like clauses
    forced = Cnf3(3, [(1, 1, 1), (2, 2, 2), (3, 3, 3)])
    assert len(forced.satisfying_assignments()) == 1
    assert count_valid_proper_colorings(sat_to_coloring_graph(forced)) == 1

    # unsatisfiable: all sign patterns on three variables
    clauses = []
    for bits in range(8):
        clauses.append(tuple((-(i + 1) if bits >> i & 1 else i + 1) for i in range(3)))
    unsat = Cnf3(3, clauses)
    assert not unsat.satisfying_assignments()
    assert count_valid_proper_colorings(sat_to_coloring_graph(unsat)) == 0


def test_clique_graph_parsimony():
    cnf = Cnf3(3, [(1, 2, 3)])
    gadget = sat_to_coloring_graph(cnf)
    clique_graph = coloring_to_clique_graph(gadget, cnf, 1)
    assert count_cliques(clique_graph, 3) == 7

    rng = random.Random(35)
    for _ in range(10):
        n = rng.randint(3, 6)
        m = rng.randint(1, 5)
        clauses = []
        for _ in range(m):
            vs = rng.sample(range(1, n + 1), 3)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        cnf = Cnf3(n, clauses)
        gadget = sat_to_coloring_graph(cnf)
        nsat = len(cnf.satisfying_assignments())
        assert count_valid_proper_colorings(gadget) == nsat
        for k in (1, 2):
            if k > n or k > m:
                continue
            cg = coloring_to_clique_graph(gadget, cnf, k)
            assert count_cliques(cg, 2 * k + 1) == nsat

    with pytest.raises(PreconditionError):
        coloring_to_clique_graph(gadget, cnf, 99)
