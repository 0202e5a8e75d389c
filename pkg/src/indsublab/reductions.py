"""Clique-counting reduction chain and the inhabited-graph lifting machinery:
instance construction, oracle-based extraction stages, parameter lifts, and
the concentrated/reducible classifier."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, NamedTuple

from .errors import InvariantError, PreconditionError
from .graphs import (
    CanonicalGraph,
    Graph,
    HColoring,
    adjacency_masks,
    canonical_key,
    contains_biclique,
    edge_slot,
    edge_subgraph_mask,
    enumerate_canonical_graphs,
    independent_set,
    induced_subgraph,
    inhabited_graph,
    make_graph,
    relabel,
)
from .params import GraphParameter, evaluate, is_nontrivial_on


class OracleHandle:
    """Deterministic counting oracle.  Every query is logged as
    (host size, result); repeated hosts are answered from a memo."""

    def __init__(self, kind: str, parameter: GraphParameter, impl: Callable):
        self.kind = kind
        self.parameter = parameter
        self.impl = impl
        self.log: list[tuple[int, object]] = []
        self._memo: dict = {}

    @classmethod
    def indsub(cls, phi: GraphParameter, impl: Callable | None = None) -> "OracleHandle":
        from .counting import indsub_value

        return cls("indsub", phi, impl or (lambda G, k: indsub_value(phi, k, G)))

    @classmethod
    def cpindsub(cls, phi: GraphParameter, impl: Callable | None = None) -> "OracleHandle":
        from .counting import count_cp_indsub

        return cls("cpindsub", phi, impl or (lambda col: count_cp_indsub(phi, col)))

    def query(self, *args):
        if self.kind == "indsub":
            G, k = args
            key = (G.n, G.mask, k)
            size = G.n
        else:
            (col,) = args
            key = (col.host.n, col.host.mask, col.pattern.n, col.pattern.mask, col.map)
            size = col.host.n
        val = self._memo.get(key)
        if val is None:
            val = self.impl(*args)
            self._memo[key] = val
        self.log.append((size, val))
        return val

    @property
    def call_count(self) -> int:
        return len(self.log)

    @property
    def max_query_size(self) -> int:
        return max((s for s, _ in self.log), default=0)


# ---------------------------------------------------------------------------
# Stage 1: cliques -> color-prescribed homomorphisms
# ---------------------------------------------------------------------------

_biclique_witness_cache: dict[tuple, tuple] = {}


def biclique_witness(F: Graph, side: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """First (left, right) witness of a complete bipartite subgraph with
    ``side`` vertices per side, in deterministic search order."""
    key = (F.n, F.mask, side)
    got = _biclique_witness_cache.get(key)
    if got is not None:
        return got
    adj = adjacency_masks(F)
    for left in combinations(range(F.n), side):
        common = (1 << F.n) - 1
        for v in left:
            common &= adj[v]
        for v in left:
            common &= ~(1 << v)
        if common.bit_count() >= side:
            right = []
            m = common
            while len(right) < side:
                b = m & -m
                right.append(b.bit_length() - 1)
                m ^= b
            got = (left, tuple(right))
            _biclique_witness_cache[key] = got
            return got
    raise PreconditionError(f"pattern graph has no K_{{{side},{side}}} subgraph")


def clique_to_cphom_instance(ell: int, F: Graph, G: Graph) -> HColoring:
    """Pattern-colored host whose color-prescribed homomorphism count from F
    equals the number of ell-cliques of G.

    Biclique classes are blown up to copies of V(G); partner classes carry an
    equality pattern, cross pairs carry an order-plus-edge pattern, and every
    other pattern edge becomes a complete connection.  The host has
    2*ell*|V(G)| + (|V(F)| - 2*ell) vertices.
    """
    if ell < 2:
        raise PreconditionError("clique size must be >= 2")
    left, right = biclique_witness(F, ell)
    ng = G.n
    blown = set(left) | set(right)
    offsets: dict[int, int] = {}
    cmap: list[int] = []
    off = 0
    for x in range(F.n):
        offsets[x] = off
        width = ng if x in blown else 1
        cmap.extend([x] * width)
        off += width
    n_prime = off
    if n_prime != 2 * ell * ng + (F.n - 2 * ell):
        raise InvariantError("instance size formula violated")

    pos_in_left = {v: i for i, v in enumerate(left)}
    pos_in_right = {v: i for i, v in enumerate(right)}

    def block(x: int) -> range:
        return range(offsets[x], offsets[x] + (ng if x in blown else 1))

    edges: list[tuple[int, int]] = []
    for x, y in F.edges():
        xi = pos_in_left.get(x)
        xj = pos_in_right.get(x)
        yi = pos_in_left.get(y)
        yj = pos_in_right.get(y)
        cross = None
        if xi is not None and yj is not None:
            cross = (xi, yj, x, y)
        elif yi is not None and xj is not None:
            cross = (yi, xj, y, x)
        if cross is not None:
            i, j, lx, ry = cross
            if i == j:
                for w in range(ng):
                    edges.append((offsets[lx] + w, offsets[ry] + w))
            else:
                for w in range(ng):
                    for w2 in range(ng):
                        if G.has_edge(w, w2) and ((w < w2) if i < j else (w > w2)):
                            edges.append((offsets[lx] + w, offsets[ry] + w2))
        else:
            for u in block(x):
                for v in block(y):
                    edges.append((u, v))
    host = make_graph(n_prime, edges)
    return HColoring(host, F, cmap)


# ---------------------------------------------------------------------------
# Stage 2: color-prescribed homomorphisms from a colorful-sum oracle
# ---------------------------------------------------------------------------

def subset_zeta(values: list, nbits: int) -> list:
    out = list(values)
    for i in range(nbits):
        bit = 1 << i
        for m in range(1 << nbits):
            if m & bit:
                out[m] = out[m] + out[m ^ bit]
    return out


def subset_moebius(values: list, nbits: int) -> list:
    out = list(values)
    for i in range(nbits):
        bit = 1 << i
        for m in range(1 << nbits):
            if m & bit:
                out[m] = out[m] - out[m ^ bit]
    return out


def edge_filtered_host(coloring: HColoring, kept_pattern_mask: int) -> HColoring:
    """Delete every host edge whose color pair lies outside the kept pattern
    edge set."""
    H = coloring.pattern
    host = coloring.host
    cmap = coloring.map
    mask = 0
    for u, v in host.edges():
        s = edge_slot(cmap[u], cmap[v], H.n)
        if kept_pattern_mask >> s & 1:
            mask |= 1 << edge_slot(u, v, host.n)
    return HColoring(Graph(host.n, mask), H, cmap)


def cphom_from_cpindsub_oracle(
    coloring: HColoring,
    oracle: OracleHandle,
    chi_table: dict | None = None,
) -> int:
    """Extract the color-prescribed homomorphism count of the full pattern by
    querying the colorful-sum oracle on every edge-filtered host and inverting
    over the subset lattice; the top term is divided by its (nonzero) signed
    alternating-enumerator coefficient."""
    from .enumerator import alternating_enumerator

    H = coloring.pattern
    e = H.edge_count
    if e > 10:
        raise PreconditionError("extraction capped at patterns with <= 10 edges")
    phi = oracle.parameter

    def chi_of(mask: int) -> Fraction:
        HA = edge_subgraph_mask(H, mask)
        if chi_table is not None:
            key = canonical_key(HA) if HA.n <= 6 else (HA.n, HA.mask)
            if key in chi_table:
                return Fraction(chi_table[key])
        return alternating_enumerator(phi, HA)

    chi_full = chi_of(H.mask)
    if chi_full == 0:
        raise PreconditionError("alternating enumerator vanishes; extraction impossible")

    slots = [s for s in range(H.mask.bit_length()) if H.mask >> s & 1]
    values = []
    for bits in range(1 << e):
        kept = 0
        for i in range(e):
            if bits >> i & 1:
                kept |= 1 << slots[i]
        values.append(oracle.query(edge_filtered_host(coloring, kept)))
    terms = subset_moebius(values, e)
    top = terms[(1 << e) - 1]
    coeff = (-1) ** e * chi_full
    hom = Fraction(top) / coeff
    if hom.denominator != 1 or hom < 0:
        raise InvariantError("extracted homomorphism count is not a nonnegative integer")
    return int(hom)


# ---------------------------------------------------------------------------
# Stage 3: colorful sums from an uncolored-sum oracle
# ---------------------------------------------------------------------------

def cpindsub_from_indsub_oracle(
    phi: GraphParameter, coloring: HColoring, oracle: OracleHandle
) -> Fraction:
    """Colorful induced sum by inclusion-exclusion over deleted color classes,
    with one uncolored oracle query per class subset."""
    H = coloring.pattern
    k = H.n
    if k > 6:
        raise PreconditionError("class inclusion-exclusion capped at k <= 6")
    classes = coloring.classes()
    host = coloring.host
    total = Fraction(0)
    for J in range(1 << k):
        keep = [
            v for v in range(host.n) if not J >> coloring.map[v] & 1
        ]
        GJ = induced_subgraph(host, keep)
        sign = -1 if J.bit_count() % 2 else 1
        total += sign * oracle.query(GJ, k)
    return total


class PipelineResult(NamedTuple):
    count: int
    oracle: OracleHandle


def count_cliques_via_indsub(
    ell: int, k: int, phi: GraphParameter, F: Graph, G: Graph
) -> PipelineResult:
    """Count ell-cliques of G through the three-stage reduction, with only
    uncolored induced-sum oracle calls at the bottom."""
    from .enumerator import alternating_enumerator

    if F.n != k:
        raise PreconditionError("pattern size must equal k")
    if alternating_enumerator(phi, F) == 0:
        raise PreconditionError("pattern has a vanishing alternating enumerator")
    coloring = clique_to_cphom_instance(ell, F, G)
    indsub_oracle = OracleHandle.indsub(phi)
    cp_oracle = OracleHandle.cpindsub(
        phi, lambda col: cpindsub_from_indsub_oracle(phi, col, indsub_oracle)
    )
    count = cphom_from_cpindsub_oracle(coloring, cp_oracle)
    return PipelineResult(count, indsub_oracle)


# ---------------------------------------------------------------------------
# Inhabited-graph lifts
# ---------------------------------------------------------------------------

class LiftSpec(NamedTuple):
    """Insertion pattern C (the evaluated graph goes into slot 0) plus the
    fixed companion graphs for the remaining slots."""

    C: Graph
    parts: tuple[Graph, ...]

    @property
    def padding(self) -> int:
        return sum(p.n for p in self.parts)


def lift_parameter(phi: GraphParameter, spec: LiftSpec) -> GraphParameter:
    """Parameter evaluating phi on the inhabited graph built from G and the
    companion parts."""
    if spec.C.n != 1 + len(spec.parts):
        raise PreconditionError("insertion pattern arity mismatch")

    def func(G: Graph) -> Fraction:
        return evaluate(phi, inhabited_graph(spec.C, [G, *spec.parts]))

    bound = None
    if phi.codomain_bound is not None:
        pad = spec.padding
        bound = lambda k: phi.codomain_bound(k + pad)
    return GraphParameter(
        name=f"lift({phi.name})",
        func=func,
        codomain_bound=bound,
        declared_edge_monotone=phi.declared_edge_monotone,
    )


def lift_instance(coloring: HColoring, spec: LiftSpec) -> HColoring:
    """Colored instance realizing the lift: the pattern gains the companion
    vertices joined to everything, the host becomes the inhabited graph, and
    the coloring is extended identically on the companion vertices."""
    if spec.C.n != 1 + len(spec.parts):
        raise PreconditionError("insertion pattern arity mismatch")
    H = coloring.pattern
    G = coloring.host
    pad = spec.padding
    k = H.n
    ext_edges = set(H.edges())
    for x in range(pad):
        xv = k + x
        for v in range(k + pad):
            if v != xv:
                ext_edges.add((min(v, xv), max(v, xv)))
    pattern_ext = make_graph(k + pad, sorted(ext_edges))
    host_ext = inhabited_graph(spec.C, [G, *spec.parts])
    cmap = list(coloring.map) + [k + x for x in range(pad)]
    return HColoring(host_ext, pattern_ext, cmap)


def check_lift_identity(phi: GraphParameter, coloring: HColoring, spec: LiftSpec) -> bool:
    """Brute-force check that the lifted colorful sum equals the colorful sum
    of the base parameter on the extended instance."""
    from .counting import count_cp_indsub

    lifted = lift_parameter(phi, spec)
    ext = lift_instance(coloring, spec)
    return count_cp_indsub(lifted, coloring) == count_cp_indsub(phi, ext)


# ---------------------------------------------------------------------------
# Concentrated / reducible classification
# ---------------------------------------------------------------------------

class Classification(NamedTuple):
    kind: str  # "concentrated" | "reducible" | "trivial"
    witness: object


def _part_compositions(total: int, slots: int):
    """Ordered compositions of ``total`` into ``slots`` positive parts."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - slots + 2):
        for rest in _part_compositions(total - first, slots - 1):
            yield (first,) + rest


def _host_slot_relabelings(C: Graph):
    """The insertion pattern with each vertex moved into slot 0."""
    seen = set()
    for v in range(C.n):
        perm = list(range(C.n))
        perm[0], perm[v] = perm[v], perm[0]
        moved = relabel(C, perm)
        if moved.mask not in seen:
            seen.add(moved.mask)
            yield moved


def find_lift_spec(phi: GraphParameter, target: int, padding: int) -> LiftSpec | None:
    """First insertion spec (ascending arity, then pattern, then parts) whose
    lift is nontrivial on ``target``-vertex graphs."""
    if padding < 0:
        return None
    max_slots = padding + 1
    for s in range(1, max_slots + 1):
        part_slots = s - 1
        for ccan in enumerate_canonical_graphs(s):
            for C in _host_slot_relabelings(ccan.graph):
                for comp in _part_compositions(padding, part_slots):
                    part_choices = [
                        [cg.graph for cg in enumerate_canonical_graphs(sz)] for sz in comp
                    ]

                    def rec(idx: int, chosen: tuple[Graph, ...]):
                        if idx == len(part_choices):
                            spec = LiftSpec(C, chosen)
                            lifted = lift_parameter(phi, spec)
                            if is_nontrivial_on(lifted, target):
                                return spec
                            return None
                        for g in part_choices[idx]:
                            got = rec(idx + 1, chosen + (g,))
                            if got is not None:
                                return got
                        return None

                    found = rec(0, ())
                    if found is not None:
                        return found
    return None


def classify_concentrated_reducible(
    phi: GraphParameter, k: int, p: int, t: int
) -> Classification:
    """Exhaustive classification at size k: either a k-vertex witness with a
    nonvanishing-mod-p alternating enumerator containing the p^t-by-p^t
    biclique, or an insertion spec whose lift is nontrivial on p^(t+1)
    vertices, or the parameter is constant on k.  Nontrivial parameters must
    land in one of the first two branches."""
    from .enumerator import alternating_enumerator

    if k > 6:
        raise PreconditionError("classification capped at k <= 6")
    if p ** t + p ** (t + 1) > k:
        raise PreconditionError("need p^t + p^(t+1) <= k")
    if phi.codomain_bound is None or phi.codomain_bound(k) >= p:
        raise PreconditionError("codomain bound must be declared and stay below p")
    side = p ** t
    for cg in enumerate_canonical_graphs(k):
        if not contains_biclique(cg.graph, side, side):
            continue
        chi = alternating_enumerator(phi, cg.graph)
        if chi.denominator == 1 and int(chi) % p != 0:
            return Classification("concentrated", cg)
    target = p ** (t + 1)
    spec = find_lift_spec(phi, target, k - target)
    if spec is not None:
        return Classification("reducible", spec)
    if not is_nontrivial_on(phi, k):
        return Classification("trivial", None)
    raise InvariantError("nontrivial parameter classified as neither branch")


def scatter_membership(phi: GraphParameter, size_map, k: int) -> LiftSpec | None:
    """Insertion spec witnessing that the parameter reduces from size k to the
    prime-power size size_map(k), or None."""
    if k > 6:
        raise PreconditionError("scatter search capped at k <= 6")
    q = size_map(k) if callable(size_map) else size_map[k]
    if not _is_prime_power(q) or q > 4:
        raise PreconditionError(f"target size {q} is not a prime power <= 4")
    return find_lift_spec(phi, q, k - q)


def _is_prime_power(x: int) -> bool:
    if x < 2:
        return False
    for p in range(2, x + 1):
        if x % p == 0:
            while x % p == 0:
                x //= p
            return x == 1
    return False
