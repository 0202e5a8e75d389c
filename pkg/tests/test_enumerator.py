"""Alternating enumerator tests: exact sweeps, fixed-point residues, the
nonvanishing certificate, and sub-basis extraction."""

import random
from fractions import Fraction

import pytest

from indsublab.counting import count_sub
from indsublab.enumerator import (
    alternating_enumerator,
    alternating_enumerator_mod_p,
    check_nonvanishing_criterion,
    subbasis_coefficients,
)
from indsublab.errors import PreconditionError
from indsublab.graphs import (
    Graph,
    canonical_key,
    complete_bipartite,
    complete_graph,
    edge_subgraph_mask,
    enumerate_canonical_graphs,
    independent_set,
    path_graph,
    star_graph,
)
from indsublab.params import GraphParameter, builtin_parameter, evaluate, standard_parameters
from indsublab.sylow import orbit_partition, sylow_generators, trivial_group


def brute_alternating(phi, G):
    """Independent oracle: explicit subset enumeration (no Gray code)."""
    total = Fraction(0)
    sub = G.mask
    while True:
        H = edge_subgraph_mask(G, sub)
        total += (-1) ** H.edge_count * evaluate(phi, H)
        if sub == 0:
            break
        sub = (sub - 1) & G.mask
    return total


def test_spot_values():
    assert alternating_enumerator(builtin_parameter("edge-power:1"), complete_graph(2)) == -1
    assert alternating_enumerator(builtin_parameter("connected"), complete_graph(3)) == 2
    assert alternating_enumerator(builtin_parameter("edge-power:1"), path_graph(3)) == 0
    # observed residue for the max-degree parameter (recorded, not a formula)
    assert alternating_enumerator(builtin_parameter("max-degree"), complete_graph(3)) == 1


def test_matches_brute_oracle():
    rng = random.Random(6)
    params = standard_parameters()
    for k in range(1, 5):
        for cg in enumerate_canonical_graphs(k):
            for phi in params:
                assert alternating_enumerator(phi, cg.graph) == brute_alternating(phi, cg.graph)


def test_edge_cap():
    with pytest.raises(PreconditionError):
        alternating_enumerator(builtin_parameter("edge-parity"), complete_graph(8))


def test_mod_p_examples():
    conn = builtin_parameter("connected")
    lat3 = orbit_partition(sylow_generators(3, 1), complete_graph(3))
    assert alternating_enumerator_mod_p(conn, complete_graph(3), lat3, 3) == 2

    comp = builtin_parameter("components")
    lat2 = orbit_partition(sylow_generators(2, 1), complete_graph(2))
    assert alternating_enumerator_mod_p(comp, complete_graph(2), lat2, 2) == 1

    # trivial lattice on an edgeless host: single fixed point
    for p in (2, 3, 5):
        host = independent_set(4)
        lat = orbit_partition(trivial_group(4), host)
        got = alternating_enumerator_mod_p(comp, host, lat, p)
        assert got == 4 % p


def test_mod_p_errors():
    comp = builtin_parameter("components")
    lat = orbit_partition(trivial_group(3), complete_graph(3))
    # trivial group order 1 = p^0 is fine; a non-p-power group is not
    from indsublab.sylow import PermutationGroup

    sym3 = PermutationGroup(3, [(1, 0, 2), (1, 2, 0)])
    lat6 = orbit_partition(sym3, complete_graph(3))
    with pytest.raises(PreconditionError):
        alternating_enumerator_mod_p(comp, complete_graph(3), lat6, 2)

    halves = GraphParameter("halves", lambda g: Fraction(1, 2))
    with pytest.raises(PreconditionError):
        alternating_enumerator_mod_p(halves, complete_graph(3), lat, 2)


def test_nonvanishing_criterion():
    lat3 = orbit_partition(sylow_generators(3, 1), complete_graph(3))
    cliq = builtin_parameter("clique")
    full = (1 << len(lat3.orbit_masks)) - 1
    assert check_nonvanishing_criterion(lat3, full, cliq, 3)

    const = GraphParameter("const1", lambda g: 1)
    assert not check_nonvanishing_criterion(lat3, full, const, 3)

    lat2 = orbit_partition(sylow_generators(2, 1), complete_graph(2))
    parity = builtin_parameter("edge-parity")
    assert check_nonvanishing_criterion(lat2, 1, parity, 2)
    assert alternating_enumerator(parity, complete_graph(2)) % 2 == 1

    big = GraphParameter("big", lambda g: 7)
    with pytest.raises(PreconditionError):
        check_nonvanishing_criterion(lat3, full, big, 3)


def test_subbasis_examples():
    cliq = builtin_parameter("clique")
    for k in (3, 4):
        dec = subbasis_coefficients(cliq, k)
        for cg in enumerate_canonical_graphs(k):
            want = Fraction(1) if cg.key == canonical_key(complete_graph(k)) else Fraction(0)
            assert dec.coefficients[cg.key] == want

    conn = builtin_parameter("connected")
    dec3 = subbasis_coefficients(conn, 3)
    assert dec3.coefficient(path_graph(3)) == 1
    assert dec3.coefficient(complete_graph(3)) == -2
    assert dec3.coefficient(independent_set(3)) == 0
    assert dec3.coefficient(Graph(3, 1)) == 0

    ham = builtin_parameter("hamiltonian-paths")
    for k in (3, 4):
        dec = subbasis_coefficients(ham, k)
        for cg in enumerate_canonical_graphs(k):
            want = Fraction(1) if cg.key == canonical_key(path_graph(k)) else Fraction(0)
            assert dec.coefficients[cg.key] == want


def test_subbasis_reconstructs_parameter():
    for phi in (builtin_parameter("connected"), builtin_parameter("chromatic")):
        for k in (2, 3, 4):
            dec = subbasis_coefficients(phi, k)
            for cg in enumerate_canonical_graphs(k):
                total = sum(
                    (
                        dec.coefficients[fc.key] * count_sub(fc.graph, cg.graph)
                        for fc in enumerate_canonical_graphs(k)
                    ),
                    Fraction(0),
                )
                assert total == evaluate(phi, cg.graph)


def test_edge_power_vanishing_and_star():
    for c in (1, 2, 3):
        phi = builtin_parameter(f"edge-power:{c}")
        for k in range(2, 6):
            for cg in enumerate_canonical_graphs(k):
                if cg.graph.edge_count > c:
                    assert alternating_enumerator(phi, cg.graph) == 0
    uni = builtin_parameter("universal-vertices")
    for k in range(2, 6):
        star_key = canonical_key(star_graph(k))
        for cg in enumerate_canonical_graphs(k):
            nonzero = alternating_enumerator(uni, cg.graph) != 0
            assert nonzero == (cg.key == star_key)
