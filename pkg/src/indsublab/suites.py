"""Verification suites: every module invariant and acceptance criterion,
runnable from the CLI (``verify``) and from the test suite.

Randomized checks draw from one ``random.Random(seed)`` per suite, in a fixed
documented order, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from math import comb

from .counting import (
    count_cliques,
    count_cp_indsub,
    count_cphom,
    count_hom,
    count_indsub,
    count_sub,
    count_sub_brute,
    count_sub_vc,
    fpt_indsub,
    verify_clique_colored_expansion,
    verify_cpindsub_hom_expansion,
)
from .enumerator import (
    alternating_enumerator,
    alternating_enumerator_mod_p,
    check_nonvanishing_criterion,
    subbasis_coefficients,
)
from .errors import InvariantError, PreconditionError
from .graphs import (
    Graph,
    HColoring,
    automorphism_count,
    automorphisms,
    canonical_key,
    complete_bipartite,
    complete_graph,
    contains_biclique,
    difference_graph,
    edge_subgraph_mask,
    enumerate_canonical_graphs,
    identity_coloring,
    independent_set,
    inhabited_graph,
    join,
    lexicographic_product,
    make_graph,
    num_slots,
    path_graph,
    positive_half,
    random_graph,
    relabel,
    star_graph,
    vertex_cover_number,
)
from .modular import (
    Cnf3,
    coloring_to_clique_graph,
    count_valid_proper_colorings,
    mod_p_clique_via_indsub,
    numclique_from_modclique,
    sat_to_coloring_graph,
)
from .params import (
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
from .reductions import (
    LiftSpec,
    OracleHandle,
    check_lift_identity,
    classify_concentrated_reducible,
    clique_to_cphom_instance,
    count_cliques_via_indsub,
    cpindsub_from_indsub_oracle,
    edge_filtered_host,
    lift_parameter,
    scatter_membership,
    subset_moebius,
    subset_zeta,
)
from .sylow import (
    orbit_partition,
    product_lattice,
    find_nonvanishing_fixed_point,
    sylow_generators,
    sylow_lattice,
    trivial_group,
)

SYLOW_PAIRS = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)]


def _prop(name: str, passed: bool, details: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "details": details}


def _integer_parameters():
    return standard_parameters()


def _random_colored_host(rng, H: Graph, n: int) -> HColoring:
    """Random H-colored host: colors drawn per vertex, cross edges kept with
    probability 1/2 only where the pattern allows them."""
    cmap = [rng.randrange(H.n) for _ in range(n)]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            cu, cv = cmap[u], cmap[v]
            if cu != cv and H.has_edge(cu, cv) and rng.random() < 0.5:
                edges.append((u, v))
    return HColoring(make_graph(n, edges), H, cmap)


def _mod_lattices(p: int):
    """Sub-lattice hosts for the exact-vs-fixed-point congruence at prime p."""
    out = []
    if p == 2:
        out.append((complete_graph(2), orbit_partition(sylow_generators(2, 1), complete_graph(2))))
        out.append((complete_graph(4), orbit_partition(sylow_generators(2, 2), complete_graph(4))))
        k2 = complete_graph(2)
        lat2 = orbit_partition(sylow_generators(2, 1), k2)
        out.append((complete_graph(6), product_lattice([(k2, lat2)] * 3)))
    elif p == 3:
        out.append((complete_graph(3), orbit_partition(sylow_generators(3, 1), complete_graph(3))))
        k3 = complete_graph(3)
        lat3 = orbit_partition(sylow_generators(3, 1), k3)
        out.append((complete_graph(6), product_lattice([(k3, lat3)] * 2)))
    elif p == 5:
        out.append((complete_graph(5), orbit_partition(sylow_generators(5, 1), complete_graph(5))))
    return out


# ---------------------------------------------------------------------------
# Acceptance criteria
# ---------------------------------------------------------------------------

def criterion_1_fixed_point_congruence(seed: int) -> dict:
    """Exact alternating sums agree with fixed-point sums mod p on every
    feasible complete host; oversized hosts are checked on the lattice side
    and on exhaustive sub-hosts up to K_6."""
    params = _integer_parameters()
    checked = 0
    for p, m in SYLOW_PAIRS:
        n = p ** m
        host = complete_graph(n)
        lattice = orbit_partition(sylow_generators(p, m), host)
        if host.edge_count <= 24:
            for phi in params:
                exact = alternating_enumerator(phi, host)
                if exact.denominator != 1:
                    return _prop("criterion-1", False, f"{phi.name} not integral")
                if int(exact) % p != alternating_enumerator_mod_p(phi, host, lattice, p):
                    return _prop("criterion-1", False, f"mismatch {phi.name} K_{n} p={p}")
                checked += 1
        else:
            for phi in params:
                alternating_enumerator_mod_p(phi, host, lattice, p)
            for sub_host, sub_lattice in _mod_lattices(p):
                for phi in params:
                    exact = alternating_enumerator(phi, sub_host)
                    got = alternating_enumerator_mod_p(phi, sub_host, sub_lattice, p)
                    if int(exact) % p != got:
                        return _prop(
                            "criterion-1",
                            False,
                            f"sub-host mismatch {phi.name} K_{sub_host.n} p={p}",
                        )
                    checked += 1
    return _prop("criterion-1", True, f"{checked} exact congruences")


def criterion_2_sylow_lattice(seed: int) -> dict:
    """Orbit-derived fixed points equal the difference-graph products; counts
    frozen from the orbit-enumeration oracle."""
    expected_counts = {(3, 1): 2, (2, 2): 4, (5, 1): 4, (2, 3): 8, (3, 2): 4}
    for (p, m), want in expected_counts.items():
        points = sylow_lattice(p, m)  # asserts set equality internally
        if len(points) != want:
            return _prop("criterion-2", False, f"count({p},{m}) = {len(points)}")
        lattice = orbit_partition(sylow_generators(p, m), complete_graph(p ** m))
        realized = {pt.graph().mask for pt in points}
        from_orbits = {g.mask for _, g in lattice.fixed_points()}
        if realized != from_orbits:
            return _prop("criterion-2", False, f"set mismatch at ({p},{m})")
    named = {canonical_key(pt.graph()) for pt in sylow_lattice(2, 2)}
    want22 = {
        canonical_key(independent_set(4)),
        canonical_key(make_graph(4, [(0, 1), (2, 3)])),
        canonical_key(complete_bipartite(2, 2)),
        canonical_key(complete_graph(4)),
    }
    if named != want22:
        return _prop("criterion-2", False, "(2,2) named points differ")
    return _prop("criterion-2", True, "orbit and product lattices coincide")


def criterion_3_subbasis(seed: int) -> dict:
    """Coefficient recursion matches the signed alternating sum and
    reconstructs the parameter on every class."""
    checked = 0
    for phi in _integer_parameters():
        for k in range(1, 5):
            dec = subbasis_coefficients(phi, k)  # internal signed-sum assert
            classes = enumerate_canonical_graphs(k)
            for cg in classes:
                total = Fraction(0)
                for fc in classes:
                    coeff = dec.coefficients[fc.key]
                    if coeff != 0:
                        total += coeff * count_sub(fc.graph, cg.graph)
                if total != evaluate(phi, cg.graph):
                    return _prop(
                        "criterion-3", False, f"{phi.name} k={k} at {cg.key}"
                    )
                checked += 1
    return _prop("criterion-3", True, f"{checked} reconstructions")


def criterion_4_indsub_expansion(seed: int) -> dict:
    """Induced sums equal the coefficient-weighted subgraph counts on seeded
    random hosts."""
    rng = random.Random(seed)
    params = _integer_parameters()
    decs = {(phi.name, k): subbasis_coefficients(phi, k) for phi in params for k in range(1, 5)}
    checked = 0
    for _ in range(30):
        n = rng.randint(4, 8)
        G = random_graph(rng, n)
        for k in range(1, 5):
            subs = {
                cg.key: count_sub(cg.graph, G) for cg in enumerate_canonical_graphs(k)
            }
            for phi in params:
                dec = decs[(phi.name, k)]
                rhs = sum(
                    (dec.coefficients[key] * c for key, c in subs.items() if c),
                    Fraction(0),
                )
                if count_indsub(phi, k, G) != rhs:
                    return _prop("criterion-4", False, f"{phi.name} k={k} n={n}")
                checked += 1
    return _prop("criterion-4", True, f"{checked} expansions on 30 hosts")


def criterion_5_fpt_path(seed: int) -> dict:
    """The bounded-vertex-cover evaluation agrees with direct enumeration, and
    edge-power enumerators vanish beyond their exponent."""
    rng = random.Random(seed)
    for c in (1, 2, 3):
        phi = builtin_parameter(f"edge-power:{c}")
        for k in range(2, 6):
            for cg in enumerate_canonical_graphs(k):
                chi = alternating_enumerator(phi, cg.graph)
                if cg.graph.edge_count > c and chi != 0:
                    return _prop("criterion-5", False, f"(#E)^{c} nonzero at {cg.key}")
    cases = [(builtin_parameter(f"edge-power:{c}"), c) for c in (1, 2, 3)]
    cases.append((builtin_parameter("universal-vertices"), 1))
    checked = 0
    for _ in range(8):
        n = rng.randint(6, 10)
        G = random_graph(rng, n)
        for k in range(3, 6):
            for phi, tau in cases:
                if fpt_indsub(phi, k, G, tau) != count_indsub(phi, k, G):
                    return _prop("criterion-5", False, f"{phi.name} k={k} n={n}")
                checked += 1
    return _prop("criterion-5", True, f"vanishing sweep + {checked} host checks")


def criterion_6_hom_expansion(seed: int) -> dict:
    """Colorful sums match their homomorphism expansion for every pattern on
    at most 4 vertices, on seeded random colored hosts."""
    rng = random.Random(seed)
    params = [
        builtin_parameter("connected"),
        builtin_parameter("edge-power:1"),
        builtin_parameter("components"),
    ]
    checked = 0
    for k in range(1, 5):
        for cg in enumerate_canonical_graphs(k):
            for _ in range(10):
                coloring = _random_colored_host(rng, cg.graph, rng.randint(k, 9))
                for phi in params:
                    rep = verify_cpindsub_hom_expansion(phi, coloring)
                    if not rep["equal"]:
                        return _prop("criterion-6", False, f"{phi.name} H={cg.key}")
                    checked += 1
    return _prop("criterion-6", True, f"{checked} expansions")


def criterion_7_pipeline(seed: int) -> dict:
    """End-to-end clique counting through the oracle pipeline, with the query
    size contract read off the call log."""
    rng = random.Random(seed)
    disc = builtin_parameter("disconnected")
    checked = 0
    for _ in range(20):
        n = rng.randint(3, 6)
        G = random_graph(rng, n)
        F = complete_bipartite(2, 2)
        res = count_cliques_via_indsub(2, 4, disc, F, G)
        if res.count != count_cliques(G, 2):
            return _prop("criterion-7", False, f"l=2 n={n}")
        if res.oracle.max_query_size > 2 * 2 * n + F.n:
            return _prop("criterion-7", False, f"l=2 query size n={n}")
        checked += 1
    for _ in range(20):
        n = rng.randint(2, 4)
        G = random_graph(rng, n)
        F = complete_bipartite(3, 3)
        res = count_cliques_via_indsub(3, 6, disc, F, G)
        if res.count != count_cliques(G, 3):
            return _prop("criterion-7", False, f"l=3 n={n}")
        if res.oracle.max_query_size > 2 * 3 * n + F.n:
            return _prop("criterion-7", False, f"l=3 query size n={n}")
        checked += 1
    return _prop("criterion-7", True, f"{checked} instances, query contract held")


def criterion_8_lift_identity(seed: int) -> dict:
    """The lifted colorful sum equals the colorful sum over the extended
    instance on seeded random specs."""
    rng = random.Random(seed)
    params = [
        builtin_parameter("edge-power:1"),
        builtin_parameter("components"),
        builtin_parameter("connected"),
    ]
    part_pool = [complete_graph(1), complete_graph(2), independent_set(2)]
    checked = 0
    for i in range(10):
        k = rng.randint(1, 3)
        candidates = [cg.graph for cg in enumerate_canonical_graphs(k)]
        H = candidates[rng.randrange(len(candidates))]
        coloring = _random_colored_host(rng, H, rng.randint(k, 6))
        nparts = rng.randint(1, 2)
        parts = tuple(part_pool[rng.randrange(len(part_pool))] for _ in range(nparts))
        s = 1 + nparts
        cgraphs = [cg.graph for cg in enumerate_canonical_graphs(s)]
        spec = LiftSpec(cgraphs[rng.randrange(len(cgraphs))], parts)
        phi = params[i % len(params)]
        if not check_lift_identity(phi, coloring, spec):
            return _prop("criterion-8", False, f"instance {i} ({phi.name})")
        checked += 1
    return _prop("criterion-8", True, f"{checked} seeded lift identities")


def criterion_9_dichotomy(seed: int) -> dict:
    """Sampled edge-monotone 0/1 table parameters at size 6 always classify
    as concentrated or reducible (never neither)."""
    rng = random.Random(seed)
    kinds = {"concentrated": 0, "reducible": 0, "trivial": 0}
    for i in range(50):
        phi = random_monotone_table_parameter(rng, 6, name=f"sampled-{i}")
        try:
            result = classify_concentrated_reducible(phi, 6, 2, 1)
        except InvariantError as exc:
            return _prop("criterion-9", False, f"sample {i}: {exc}")
        kinds[result.kind] += 1
    return _prop("criterion-9", True, f"kinds={kinds}")


def criterion_10_modular(seed: int) -> dict:
    """Residue pipeline and divisibility-padding recovery both agree with
    direct clique counts mod p."""
    rng = random.Random(seed)
    disc = builtin_parameter("disconnected")
    isi = builtin_parameter("independent-set")
    F = complete_bipartite(2, 2)
    by_p = {2: disc, 3: isi, 5: disc}
    checked = 0
    for _ in range(20):
        n = rng.randint(3, 6)
        G = random_graph(rng, n)
        direct2 = count_cliques(G, 2)
        direct3 = count_cliques(G, 3)
        for p, phi in by_p.items():
            r, _ = mod_p_clique_via_indsub(2, 4, phi, F, G, p)
            if r != direct2 % p:
                return _prop("criterion-10", False, f"pipeline p={p} n={n}")

            def oracle(host, k, pp=p):
                return count_cliques(host, k) % pp == 0

            if numclique_from_modclique(G, 2, p, oracle) != direct2 % p:
                return _prop("criterion-10", False, f"padding k=2 p={p}")
            if numclique_from_modclique(G, 3, p, oracle) != direct3 % p:
                return _prop("criterion-10", False, f"padding k=3 p={p}")
            checked += 1
    return _prop("criterion-10", True, f"{checked} prime/host pairs")


def criterion_11_parsimony(seed: int) -> dict:
    """Clique counts of the compatibility graph equal satisfying-assignment
    counts, and a single clause admits exactly 7 valid colorings."""
    single = sat_to_coloring_graph(Cnf3(3, [(1, 2, 3)]))
    if count_valid_proper_colorings(single) != 7:
        return _prop("criterion-11", False, "single clause != 7")
    rng = random.Random(seed)
    checked = 0
    for trial in range(20):
        n = rng.randint(3, 6)
        m = rng.randint(1, 5)
        clauses = []
        for _ in range(m):
            vs = rng.sample(range(1, n + 1), 3)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        cnf = Cnf3(n, clauses)
        gadget = sat_to_coloring_graph(cnf)
        nsat = len(cnf.satisfying_assignments())
        for k in (1, 2):
            if k > cnf.n or k > cnf.m:
                continue
            clique_graph = coloring_to_clique_graph(gadget, cnf, k)
            if count_cliques(clique_graph, 2 * k + 1) != nsat:
                return _prop("criterion-11", False, f"trial {trial} k={k}")
            checked += 1
    return _prop("criterion-11", True, f"{checked} formula/k pairs")


def criterion_12_spot_values(seed: int) -> dict:
    """Anchored spot values: instance size, the 2-vertex component-count
    residue, and the full difference graph."""
    disc = builtin_parameter("disconnected")
    col = clique_to_cphom_instance(2, complete_bipartite(2, 2), complete_graph(3))
    if col.host.n != 12:
        return _prop("criterion-12", False, f"|V(G')| = {col.host.n}")
    comp = builtin_parameter("components")
    chi = alternating_enumerator(comp, complete_graph(2))
    if int(chi) % 2 != 1:
        return _prop("criterion-12", False, f"chi-hat(components,K_2) = {chi}")
    if difference_graph(5, {1, 2}) != complete_graph(5):
        return _prop("criterion-12", False, "difference graph mod 5 not complete")
    return _prop("criterion-12", True, "3 anchored values")


CRITERIA = {
    1: criterion_1_fixed_point_congruence,
    2: criterion_2_sylow_lattice,
    3: criterion_3_subbasis,
    4: criterion_4_indsub_expansion,
    5: criterion_5_fpt_path,
    6: criterion_6_hom_expansion,
    7: criterion_7_pipeline,
    8: criterion_8_lift_identity,
    9: criterion_9_dichotomy,
    10: criterion_10_modular,
    11: criterion_11_parsimony,
    12: criterion_12_spot_values,
}


def run_criterion(number: int, seed: int = 7) -> dict:
    return CRITERIA[number](seed)


# ---------------------------------------------------------------------------
# Module invariant suites
# ---------------------------------------------------------------------------

def suite_graph_core(seed: int) -> list[dict]:
    props = []
    rng = random.Random(seed)

    ok = True
    hosts = [cg.graph for k in range(1, 6) for cg in enumerate_canonical_graphs(k)]
    hosts += [complete_graph(6), complete_graph(7), complete_graph(8)]
    hosts += [random_graph(rng, n) for n in (6, 7, 8)]
    for G in hosts:
        if edge_subgraph_mask(G, G.mask) != G or edge_subgraph_mask(G, 0).edge_count != 0:
            ok = False
    props.append(_prop("edge-subgraph-identities", ok, f"{len(hosts)} hosts"))

    ok = True
    count = 0
    for k in range(1, 7):
        for cg in enumerate_canonical_graphs(k):
            for perm in permutations(range(k)):
                if canonical_key(relabel(cg.graph, perm)) != cg.key:
                    ok = False
                count += 1
    props.append(_prop("canonical-iso-invariance", ok, f"{count} relabelings"))

    ok = True
    for a in range(1, 5):
        for b in range(1, 5):
            got = inhabited_graph(
                complete_graph(2), [independent_set(a), independent_set(b)]
            )
            if canonical_key(got) != canonical_key(complete_bipartite(a, b)):
                ok = False
    props.append(_prop("inhabited-biclique", ok, "a,b <= 4"))

    ok = True
    for factors in (
        [complete_graph(2), independent_set(2)],
        [independent_set(2), complete_graph(2)],
        [complete_graph(2), complete_graph(2)],
        [complete_graph(2), independent_set(2), complete_graph(2)],
        [path_graph(3), complete_graph(2)],
    ):
        prod = lexicographic_product(factors)
        size = 1
        for f in factors:
            size *= f.n
        if prod.n != size:
            ok = False
    props.append(_prop("lexicographic-size", ok))

    ok = True
    for q in (2, 3, 5, 7):
        half = positive_half(q)
        for bits in range(1 << len(half)):
            conn = {half[i] for i in range(len(half)) if bits >> i & 1}
            G = difference_graph(q, conn)
            orbit = {0}
            for perm in automorphisms(G):
                orbit.add(perm[0])
            if len(orbit) != q:
                ok = False
    props.append(_prop("difference-vertex-transitive", ok, "q <= 7, all sets"))
    return props


def suite_params(seed: int) -> list[dict]:
    props = []
    rng = random.Random(seed)
    params = _integer_parameters()

    ok = True
    count = 0
    for k in range(1, 6):
        for cg in enumerate_canonical_graphs(k):
            base = {phi.name: evaluate(phi, cg.graph) for phi in params}
            for _ in range(20):
                perm = list(range(k))
                rng.shuffle(perm)
                moved = relabel(cg.graph, perm)
                for phi in params:
                    if evaluate(phi, moved) != base[phi.name]:
                        ok = False
                count += 1
    props.append(_prop("iso-invariance", ok, f"{count} relabelings x {len(params)} params"))

    ok = True
    for phi in params:
        for k in range(1, 5):
            dec = indicator_decomposition(phi, k)
            for cg in enumerate_canonical_graphs(k):
                total = sum((b * evaluate(ind, cg.graph) for b, ind in dec), Fraction(0))
                if total != evaluate(phi, cg.graph):
                    ok = False
    props.append(_prop("indicator-reconstruction", ok, "k <= 4, all built-ins"))

    from .params import GraphParameter as _GP

    ternary = _GP("edges-mod3-shift", lambda G: Fraction(G.edge_count % 3 - 1))
    phi_prime, recover = normalize_codomain(ternary, [-1, 0, 1])
    ok = True
    for _ in range(10):
        n = rng.randint(3, 7)
        G = random_graph(rng, n)
        for k in range(1, 4):
            m = count_indsub(phi_prime, k, G)
            if recover(k, n, m) != count_indsub(ternary, k, G):
                ok = False
    props.append(_prop("normalize-roundtrip", ok, "codomain {-1,0,1}, n <= 7, k <= 3"))

    ok = True
    details = []
    for phi in params:
        if phi.declared_edge_monotone:
            for k in range(2, 6):
                if not is_edge_monotone_on(phi, k):
                    ok = False
                if is_nontrivial_on(phi, k):
                    if not evaluate(phi, independent_set(k)) > evaluate(phi, complete_graph(k)):
                        ok = False
            details.append(phi.name)
    props.append(_prop("edge-monotone-flags", ok, ",".join(details)))
    return props


def suite_chi_comp(seed: int) -> list[dict]:
    props = [criterion_1_fixed_point_congruence(seed)]

    ok = True
    lattices = []
    for p, m in SYLOW_PAIRS:
        lattices.append((p, orbit_partition(sylow_generators(p, m), complete_graph(p ** m))))
    for p in (2, 3, 5):
        for host, lat in _mod_lattices(p):
            lattices.append((p, lat))
    for p, lat in lattices:
        for subset, g in lat.fixed_points():
            if ((-1) ** g.edge_count) % p != ((-1) ** lat.level(subset)) % p:
                ok = False
    props.append(_prop("sign-level-law", ok, f"{len(lattices)} lattices"))

    ok = True
    for p, lat in lattices:
        for g in lat.group.generators:
            for subset, pt in lat.fixed_points():
                if relabel(pt, g).mask != pt.mask:
                    ok = False
    props.append(_prop("fixed-points-inherit-group", ok))
    return props


def suite_sylow(seed: int) -> list[dict]:
    props = [criterion_2_sylow_lattice(seed)]

    ok = True
    for p, m in SYLOW_PAIRS:
        lattice = orbit_partition(sylow_generators(p, m), complete_graph(p ** m))
        for pt in sylow_lattice(p, m):
            subset = lattice.subset_of_graph(pt.graph())
            if lattice.level(subset) != pt.level:
                ok = False
    props.append(_prop("level-consistency", ok))

    ok = True
    for p, m in ((2, 2), (2, 3), (3, 2)):
        side = p ** (m - 1)
        for pt in sylow_lattice(p, m):
            if pt.empty_prefix == 0 and not contains_biclique(pt.graph(), side, side):
                ok = False
    props.append(_prop("prefix0-biclique", ok, "(2,2),(2,3),(3,2)"))

    ok = True
    examples = [
        ("independent-set", 2, 1, ((frozenset({1}),),)),
        ("disconnected", 2, 2, ((frozenset({1}), frozenset()),)),
    ]
    for name, p, t, want_sets in examples:
        got = find_nonvanishing_fixed_point(builtin_parameter(name), p, t)
        if got is None or got.sets not in want_sets:
            ok = False
    if find_nonvanishing_fixed_point(table_parameter("const", 4, {}), 2, 2) is not None:
        ok = False
    props.append(_prop("nonvanishing-search", ok))
    return props


def suite_subbasis(seed: int) -> list[dict]:
    props = [criterion_3_subbasis(seed)]

    ok = True
    for k in range(2, 6):
        phi = builtin_parameter("universal-vertices")
        star_key = canonical_key(star_graph(k))
        for cg in enumerate_canonical_graphs(k):
            chi = alternating_enumerator(phi, cg.graph)
            if (chi != 0) != (cg.key == star_key):
                ok = False
    props.append(_prop("universal-vertex-star", ok, "k <= 5"))
    return props


def suite_counting(seed: int) -> list[dict]:
    props = [criterion_4_indsub_expansion(seed), criterion_5_fpt_path(seed)]
    rng = random.Random(seed)

    ham = builtin_parameter("hamiltonian-paths")
    ok = True
    for _ in range(6):
        n = rng.randint(4, 9)
        G = random_graph(rng, n)
        for k in range(2, 6):
            if k > n:
                continue
            if count_indsub(ham, k, G) != count_sub(path_graph(k), G):
                ok = False
    props.append(_prop("hamiltonian-indsub", ok, "k <= 5"))

    ok = True
    for _ in range(6):
        k = rng.randint(2, 4)
        cgs = enumerate_canonical_graphs(k)
        H = cgs[rng.randrange(len(cgs))].graph
        coloring = _random_colored_host(rng, H, rng.randint(k, 8))
        lhs = count_cp_indsub(ham, coloring)
        rhs = Fraction(0)
        sub = H.mask
        while True:
            HA = edge_subgraph_mask(H, sub)
            if canonical_key(HA) == canonical_key(path_graph(k)):
                rhs += count_cphom(coloring, HA)
            if sub == 0:
                break
            sub = (sub - 1) & H.mask
        if lhs != rhs:
            ok = False
        pathcol = _random_colored_host(rng, path_graph(k), rng.randint(k, 8))
        prod = count_sub(path_graph(k), path_graph(k)) * count_cphom(pathcol)
        if count_cp_indsub(ham, pathcol) != prod:
            ok = False
    props.append(_prop("hamiltonian-colorful", ok, "spanning-path sum + path product"))

    ok = True
    checked = 0
    patterns = [
        cg.graph
        for k in range(1, 6)
        for cg in enumerate_canonical_graphs(k)
        if vertex_cover_number(cg.graph) <= 2
    ]
    for _ in range(30):
        n = rng.randint(4, 10)
        G = random_graph(rng, n)
        for H in patterns:
            if count_sub_vc(H, G) != count_sub_brute(H, G):
                ok = False
            checked += 1
    props.append(_prop("fast-equals-brute", ok, f"{checked} pattern/host pairs"))

    ok = True
    for k in range(1, 5):
        fact = 1
        for x in range(2, k + 1):
            fact *= x
        for _ in range(5):
            G = random_graph(rng, rng.randint(k, 8))
            if count_hom(complete_graph(k), G) != fact * count_sub(complete_graph(k), G):
                ok = False
    props.append(_prop("hom-equals-factorial-sub", ok, "k <= 4"))
    return props


def suite_hom_expansion(seed: int) -> list[dict]:
    props = [criterion_6_hom_expansion(seed)]
    rng = random.Random(seed)

    ok = True
    for k in (2, 3):
        for _ in range(5):
            coloring = _random_colored_host(rng, complete_graph(k), rng.randint(k, 8))
            for name in ("edge-power:1", "clique", "connected"):
                rep = verify_clique_colored_expansion(builtin_parameter(name), k, coloring)
                if not rep["equal"]:
                    ok = False
    props.append(_prop("complete-pattern-expansion", ok, "k <= 3 random hosts"))
    return props


def suite_pipeline(seed: int) -> list[dict]:
    props = [criterion_7_pipeline(seed)]
    rng = random.Random(seed)

    disc = builtin_parameter("disconnected")
    G = random_graph(rng, 4)
    coloring = clique_to_cphom_instance(2, complete_bipartite(2, 2), G)
    oracle = OracleHandle.indsub(disc)
    cp_oracle = OracleHandle.cpindsub(
        disc, lambda col: cpindsub_from_indsub_oracle(disc, col, oracle)
    )
    H = coloring.pattern
    e = H.edge_count
    slots = [s for s in range(H.mask.bit_length()) if H.mask >> s & 1]
    values = []
    for bits in range(1 << e):
        kept = 0
        for i in range(e):
            if bits >> i & 1:
                kept |= 1 << slots[i]
        values.append(cp_oracle.query(edge_filtered_host(coloring, kept)))
    terms = subset_moebius(values, e)
    back = subset_zeta(terms, e)
    props.append(_prop("moebius-zeta-roundtrip", back == values, f"2^{e} subsets"))
    return props


def suite_lift(seed: int) -> list[dict]:
    props = [criterion_8_lift_identity(seed)]

    ok = True
    spec = scatter_membership(builtin_parameter("clique"), lambda k: 2, 3)
    if spec is None or spec.C.edge_count != 1:
        ok = False
    if scatter_membership(table_parameter("const", 3, {}), lambda k: 2, 3) is not None:
        ok = False
    if scatter_membership(builtin_parameter("connected"), lambda k: 2, 3) is not None:
        ok = False
    props.append(_prop("scatter-membership", ok))
    return props


def suite_dichotomy(seed: int) -> list[dict]:
    return [criterion_9_dichotomy(seed)]


def suite_modular(seed: int) -> list[dict]:
    return [criterion_10_modular(seed)]


def suite_parsimony(seed: int) -> list[dict]:
    props = [criterion_11_parsimony(seed)]

    cnf = Cnf3(3, [(1, -2, 3), (-1, 2, 3)])
    gadget = sat_to_coloring_graph(cnf)
    ok = count_valid_proper_colorings(gadget) == len(cnf.satisfying_assignments())
    props.append(_prop("valid-colorings-equal-sat", ok, "n=3 m=2 full check"))
    return props


def suite_spot(seed: int) -> list[dict]:
    return [criterion_12_spot_values(seed)]


SUITES = {
    "graph-core": suite_graph_core,
    "params": suite_params,
    "chi-comp": suite_chi_comp,
    "sylow": suite_sylow,
    "subbasis": suite_subbasis,
    "counting": suite_counting,
    "hom-expansion": suite_hom_expansion,
    "pipeline": suite_pipeline,
    "lift": suite_lift,
    "dichotomy": suite_dichotomy,
    "modular": suite_modular,
    "parsimony": suite_parsimony,
    "spot": suite_spot,
}


def run_suite(name: str, seed: int = 7) -> dict:
    if name == "all":
        properties = []
        for sname in SUITES:
            for prop in SUITES[sname](seed):
                prop = dict(prop)
                prop["name"] = f"{sname}/{prop['name']}"
                properties.append(prop)
    elif name in SUITES:
        properties = SUITES[name](seed)
    else:
        raise PreconditionError(f"unknown suite {name!r}")
    return {
        "suite": name,
        "seed": seed,
        "passed": all(p["passed"] for p in properties),
        "properties": properties,
    }
