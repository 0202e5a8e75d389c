"""Small-graph kernel: bitmask graphs, canonical forms, and product constructions.

A graph is a vertex count ``n`` plus an edge bitmap over the C(n, 2) slots in
row-major (u < v) order.  Everything here is pure and immutable; expensive
canonicalizations are cached process-wide (and optionally on disk, see
``INDSUBLAB_CACHE_DIR``).
"""

from __future__ import annotations

import json
import os
import pickle
from functools import lru_cache
from itertools import combinations, permutations

from .errors import InvariantError, PreconditionError

CANON_CAP = 8        # exhaustive canonicalization bound
ENUM_CAP = 6         # complete-orbit-table bound; canonical enumeration stops here
VC_CAP = 16


def num_slots(n: int) -> int:
    return n * (n - 1) // 2


def edge_slot(u: int, v: int, n: int) -> int:
    """Bit index of edge {u, v} in the row-major (u < v) layout."""
    if u > v:
        u, v = v, u
    return u * n - u * (u + 1) // 2 + (v - u - 1)


@lru_cache(maxsize=None)
def slot_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Slot index -> (u, v) with u < v."""
    return tuple((u, v) for u in range(n) for v in range(u + 1, n))


class Graph:
    """Simple undirected graph on vertex set {0, ..., n-1}."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        self.n = n
        self.mask = mask

    def edges(self) -> list[tuple[int, int]]:
        pairs = slot_pairs(self.n)
        m = self.mask
        out = []
        s = 0
        while m:
            if m & 1:
                out.append(pairs[s])
            m >>= 1
            s += 1
        return out

    @property
    def edge_count(self) -> int:
        return self.mask.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return bool(self.mask >> edge_slot(u, v, self.n) & 1)

    def degree(self, v: int) -> int:
        return sum(1 for u in range(self.n) if u != v and self.has_edge(u, v))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def adjacency_masks(G: Graph) -> list[int]:
    """Per-vertex neighbor bitmask (bit v of entry u set iff {u, v} is an edge)."""
    adj = [0] * G.n
    for u, v in G.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def make_graph(n: int, edges) -> Graph:
    """Validated constructor from an iterable of endpoint pairs."""
    if n < 0:
        raise PreconditionError("vertex count must be nonnegative")
    mask = 0
    for e in edges:
        u, v = e
        if u == v:
            raise PreconditionError(f"loop edge {e!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"endpoint out of range in {e!r} (n={n})")
        mask |= 1 << edge_slot(u, v, n)
    return Graph(n, mask)


def complete_graph(n: int) -> Graph:
    return Graph(n, (1 << num_slots(n)) - 1)


def independent_set(n: int) -> Graph:
    return Graph(n, 0)


def complete_bipartite(a: int, b: int) -> Graph:
    return make_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycles need at least 3 vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Star on n vertices: vertex 0 joined to all others."""
    return make_graph(n, [(0, i) for i in range(1, n)])


def disjoint_union(*graphs: Graph) -> Graph:
    n = sum(g.n for g in graphs)
    edges = []
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges())
        off += g.n
    return make_graph(n, edges)


def join(*graphs: Graph) -> Graph:
    """Disjoint union plus all edges between distinct blocks."""
    g = disjoint_union(*graphs)
    off = 0
    blocks = []
    for h in graphs:
        blocks.append(range(off, off + h.n))
        off += h.n
    mask = g.mask
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            for u in blocks[i]:
                for v in blocks[j]:
                    mask |= 1 << edge_slot(u, v, g.n)
    return Graph(g.n, mask)


def edge_subgraph_mask(G: Graph, mask: int) -> Graph:
    """Edge-subgraph on the same vertex set; ``mask`` must be a submask of E(G)."""
    if mask & ~G.mask:
        raise PreconditionError("edge subset contains a non-edge of the host")
    return Graph(G.n, mask)


def edge_subgraph(G: Graph, edges) -> Graph:
    """Edge-subgraph given an iterable of edges of G."""
    mask = 0
    for u, v in edges:
        s = edge_slot(u, v, G.n)
        if not (G.mask >> s & 1):
            raise PreconditionError(f"({u}, {v}) is not an edge of the host")
        mask |= 1 << s
    return Graph(G.n, mask)


def induced_subgraph(G: Graph, vertices) -> Graph:
    """Subgraph induced by ``vertices``, relabeled to 0..|A|-1 preserving order."""
    vs = sorted(set(vertices))
    for v in vs:
        if not (0 <= v < G.n):
            raise PreconditionError(f"vertex {v} out of range")
    k = len(vs)
    mask = 0
    for i in range(k):
        for j in range(i + 1, k):
            if G.has_edge(vs[i], vs[j]):
                mask |= 1 << edge_slot(i, j, k)
    return Graph(k, mask)


def relabel(G: Graph, perm) -> Graph:
    """Apply a vertex permutation (perm[old] = new)."""
    n = G.n
    mask = 0
    for u, v in G.edges():
        mask |= 1 << edge_slot(perm[u], perm[v], n)
    return Graph(n, mask)


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _slot_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    mat = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            if u != v:
                mat[u][v] = edge_slot(u, v, n)
    return tuple(tuple(row) for row in mat)


@lru_cache(maxsize=None)
def _perm_slot_maps(n: int) -> tuple[tuple[int, ...], ...]:
    """For each permutation of [n], the induced permutation of edge slots."""
    pairs = slot_pairs(n)
    sm = _slot_matrix(n)
    return tuple(
        tuple(sm[perm[u]][perm[v]] for (u, v) in pairs)
        for perm in permutations(range(n))
    )


_canon_tables: dict[int, list[int]] = {}


def _cache_dir() -> str | None:
    return os.environ.get("INDSUBLAB_CACHE_DIR") or None


def _build_canon_table(n: int) -> list[int]:
    # One pass over all masks: the first unseen mask of each orbit is its
    # minimum, so it canonicalizes its whole orbit at once.
    nslots = num_slots(n)
    maps = _perm_slot_maps(n)
    canon = [-1] * (1 << nslots)
    for mask in range(1 << nslots):
        if canon[mask] >= 0:
            continue
        bits = [s for s in range(nslots) if mask >> s & 1]
        for slotmap in maps:
            m = 0
            for s in bits:
                m |= 1 << slotmap[s]
            if canon[m] < 0:
                canon[m] = mask
    return canon


def _canon_table(n: int) -> list[int]:
    tbl = _canon_tables.get(n)
    if tbl is not None:
        return tbl
    cdir = _cache_dir()
    path = os.path.join(cdir, f"canon{n}.pickle") if cdir else None
    if path and os.path.exists(path):
        with open(path, "rb") as fh:
            tbl = pickle.load(fh)
    else:
        tbl = _build_canon_table(n)
        if path:
            os.makedirs(cdir, exist_ok=True)
            tmp = path + ".tmp"
            with open(tmp, "wb") as fh:
                pickle.dump(tbl, fh)
            os.replace(tmp, path)
    _canon_tables[n] = tbl
    return tbl


@lru_cache(maxsize=65536)
def _min_mask_direct(n: int, mask: int) -> int:
    sm = _slot_matrix(n)
    edges = Graph(n, mask).edges()
    best = mask
    for perm in permutations(range(n)):
        m = 0
        for u, v in edges:
            m |= 1 << sm[perm[u]][perm[v]]
        if m < best:
            best = m
    return best


def canonical_key(G: Graph) -> tuple[int, int]:
    """Total-order key: (n, minimum edge bitmap over all vertex permutations)."""
    n = G.n
    if n > CANON_CAP:
        raise PreconditionError(f"canonical form capped at n <= {CANON_CAP}")
    if n <= 1:
        return (n, 0)
    if n <= ENUM_CAP:
        return (n, _canon_table(n)[G.mask])
    return (n, _min_mask_direct(n, G.mask))


class CanonicalGraph:
    """A canonical representative together with its total-order key."""

    __slots__ = ("graph", "key")

    def __init__(self, graph: Graph, key: tuple[int, int]):
        self.graph = graph
        self.key = key

    def __eq__(self, other) -> bool:
        return isinstance(other, CanonicalGraph) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"CanonicalGraph(key={self.key}, edges={self.graph.edges()})"


def canonical_form(G: Graph) -> CanonicalGraph:
    key = canonical_key(G)
    return CanonicalGraph(Graph(key[0], key[1]), key)


@lru_cache(maxsize=None)
def enumerate_canonical_graphs(k: int) -> tuple[CanonicalGraph, ...]:
    """One representative per isomorphism class of k-vertex graphs, key-sorted."""
    if k > ENUM_CAP:
        raise PreconditionError(f"canonical enumeration capped at k <= {ENUM_CAP}")
    if k <= 1:
        return (CanonicalGraph(Graph(k, 0), (k, 0)),)
    tbl = _canon_table(k)
    reps = sorted(m for m in range(1 << num_slots(k)) if tbl[m] == m)
    return tuple(CanonicalGraph(Graph(k, m), (k, m)) for m in reps)


def automorphisms(G: Graph):
    """Yield all adjacency-preserving vertex permutations (n <= CANON_CAP)."""
    n = G.n
    if n > CANON_CAP:
        raise PreconditionError(f"automorphism sweep capped at n <= {CANON_CAP}")
    sm = _slot_matrix(n)
    edges = G.edges()
    mask = G.mask
    for perm in permutations(range(n)):
        m = 0
        for u, v in edges:
            m |= 1 << sm[perm[u]][perm[v]]
        if m == mask:
            yield perm


@lru_cache(maxsize=None)
def _aut_count_cached(n: int, mask: int) -> int:
    return sum(1 for _ in automorphisms(Graph(n, mask)))


def automorphism_count(G: Graph) -> int:
    return _aut_count_cached(G.n, G.mask)


# ---------------------------------------------------------------------------
# Products and gadget constructions
# ---------------------------------------------------------------------------

def lexicographic_product(factors) -> Graph:
    """Vertices are tuples (row-major flattening); the first differing
    coordinate must be an edge of its factor."""
    factors = list(factors)
    if not factors:
        raise PreconditionError("empty factor list")
    sizes = [g.n for g in factors]
    if any(s == 0 for s in sizes):
        raise PreconditionError("empty factor graph")
    n = 1
    for s in sizes:
        n *= s
    m = len(factors)

    def decode(idx: int) -> tuple[int, ...]:
        coords = []
        for s in reversed(sizes):
            coords.append(idx % s)
            idx //= s
        return tuple(reversed(coords))

    coords = [decode(i) for i in range(n)]
    mask = 0
    for a in range(n):
        ca = coords[a]
        for b in range(a + 1, n):
            cb = coords[b]
            for i in range(m):
                if ca[i] != cb[i]:
                    if factors[i].has_edge(ca[i], cb[i]):
                        mask |= 1 << edge_slot(a, b, n)
                    break
    return Graph(n, mask)


def inhabited_graph(C: Graph, parts) -> Graph:
    """Disjoint union of ``parts`` plus all cross edges between part blocks i, j
    whenever {i, j} is an edge of C.  Blocks are laid out in part order."""
    parts = list(parts)
    if len(parts) != C.n:
        raise PreconditionError(f"need exactly {C.n} parts, got {len(parts)}")
    g = disjoint_union(*parts) if parts else Graph(0, 0)
    offsets = []
    off = 0
    for p in parts:
        offsets.append(off)
        off += p.n
    mask = g.mask
    for i, j in C.edges():
        for u in range(offsets[i], offsets[i] + parts[i].n):
            for v in range(offsets[j], offsets[j] + parts[j].n):
                mask |= 1 << edge_slot(u, v, g.n)
    return Graph(g.n, mask)


def difference_graph(q: int, connection: frozenset | set) -> Graph:
    """Circulant graph on Z_q (q prime) with connection set A (subset of the
    positive half {1..(q-1)/2}, or {1} for q = 2): {u, v} is an edge iff
    (u - v) mod q lies in A or -A."""
    if not _is_prime(q):
        raise PreconditionError(f"modulus {q} is not prime")
    half = {1} if q == 2 else set(range(1, (q - 1) // 2 + 1))
    conn = set(connection)
    if not conn <= half:
        raise PreconditionError(f"connection set {sorted(conn)} outside {sorted(half)}")
    full = conn | {(q - x) % q for x in conn}
    edges = [
        (u, v)
        for u in range(q)
        for v in range(u + 1, q)
        if (u - v) % q in full
    ]
    return make_graph(q, edges)


def positive_half(p: int) -> tuple[int, ...]:
    """The canonical difference sets available mod p."""
    return (1,) if p == 2 else tuple(range(1, (p - 1) // 2 + 1))


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Structure queries
# ---------------------------------------------------------------------------

def contains_biclique(G: Graph, a: int, b: int) -> bool:
    """True iff K_{a,b} occurs as a (not necessarily induced) subgraph."""
    if a < 1 or b < 1:
        raise PreconditionError("biclique sides must be >= 1")
    if a + b > G.n:
        return False
    adj = adjacency_masks(G)
    for left in combinations(range(G.n), a):
        common = (1 << G.n) - 1
        for v in left:
            common &= adj[v]
        for v in left:
            common &= ~(1 << v)
        if common.bit_count() >= b:
            return True
    return False


def minimum_vertex_cover(G: Graph) -> tuple[int, ...]:
    """A minimum vertex cover, found by exact branch and bound (n <= VC_CAP)."""
    if G.n > VC_CAP:
        raise PreconditionError(f"vertex cover capped at n <= {VC_CAP}")
    edges = G.edges()

    memo: dict[int, tuple[int, ...]] = {}

    def best_cover(remaining: int) -> tuple[int, ...]:
        if remaining == 0:
            return ()
        got = memo.get(remaining)
        if got is not None:
            return got
        idx = (remaining & -remaining).bit_length() - 1
        u, v = edges[idx]
        best: tuple[int, ...] | None = None
        for pick in (u, v):
            rest = remaining
            for i, (x, y) in enumerate(edges):
                if rest >> i & 1 and (x == pick or y == pick):
                    rest &= ~(1 << i)
            sub = (pick,) + best_cover(rest)
            if best is None or len(sub) < len(best):
                best = sub
        memo[remaining] = best
        return best

    cover = best_cover((1 << len(edges)) - 1)
    return tuple(sorted(set(cover)))


def vertex_cover_number(G: Graph) -> int:
    return len(minimum_vertex_cover(G))


def connected_components(G: Graph) -> list[list[int]]:
    adj = adjacency_masks(G)
    seen = 0
    comps = []
    for start in range(G.n):
        if seen >> start & 1:
            continue
        frontier = 1 << start
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= adj[b.bit_length() - 1]
                f ^= b
            frontier = nxt & ~comp
        seen |= comp
        comps.append([v for v in range(G.n) if comp >> v & 1])
    return comps


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(connected_components(G)) == 1


# ---------------------------------------------------------------------------
# Colorings
# ---------------------------------------------------------------------------

class HColoring:
    """A pattern-colored host: ``cmap`` maps host vertices to pattern vertices
    and must be a graph homomorphism (host edges land on pattern edges)."""

    __slots__ = ("host", "pattern", "map")

    def __init__(self, host: Graph, pattern: Graph, cmap, check: bool = True):
        cmap = tuple(cmap)
        if len(cmap) != host.n:
            raise PreconditionError("coloring length must equal host vertex count")
        if any(not (0 <= c < pattern.n) for c in cmap):
            raise PreconditionError("color out of pattern range")
        if check:
            for u, v in host.edges():
                if cmap[u] == cmap[v] or not pattern.has_edge(cmap[u], cmap[v]):
                    raise PreconditionError(
                        f"edge ({u}, {v}) maps to non-edge ({cmap[u]}, {cmap[v]})"
                    )
        self.host = host
        self.pattern = pattern
        self.map = cmap

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.pattern.n)]
        for v, c in enumerate(self.map):
            out[c].append(v)
        return out

    def __repr__(self) -> str:
        return f"HColoring(host_n={self.host.n}, pattern_n={self.pattern.n})"


def identity_coloring(G: Graph) -> HColoring:
    return HColoring(G, G, range(G.n))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def graph_to_json(G: Graph) -> dict:
    return {"n": G.n, "edges": [[u, v] for u, v in G.edges()]}


def graph_from_json(obj) -> Graph:
    try:
        n = obj["n"]
        edges = [tuple(e) for e in obj["edges"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph object: {exc}") from exc
    return make_graph(n, edges)


def to_graph6(G: Graph) -> str:
    """Standard graph6 line for n <= 62 (column-major upper triangle)."""
    n = G.n
    if n > 62:
        raise PreconditionError("graph6 writer capped at n <= 62")
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if G.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = val << 1 | b
        chars.append(chr(val + 63))
    return "".join(chars)


def from_graph6(line: str) -> Graph:
    line = line.strip()
    if not line:
        raise ValueError("empty graph6 line")
    vals = [ord(c) - 63 for c in line]
    if any(v < 0 or v > 63 for v in vals):
        raise ValueError("invalid graph6 character")
    n = vals[0]
    if n > 62:
        raise ValueError("graph6 reader capped at n <= 62")
    need = (num_slots(n) + 5) // 6
    if len(vals) - 1 != need:
        raise ValueError("graph6 length mismatch")
    bits = []
    for v in vals[1:]:
        for shift in range(5, -1, -1):
            bits.append(v >> shift & 1)
    edges = []
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                edges.append((u, v))
            i += 1
    return make_graph(n, edges)


def load_graph(path: str) -> Graph:
    """Read a graph file: JSON if it starts with '{', otherwise graph6."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read().strip()
    if text.startswith("{"):
        return graph_from_json(json.loads(text))
    return from_graph6(text.splitlines()[0])


# ---------------------------------------------------------------------------
# Randomness (fixed stream discipline: one Random per suite, edges drawn in
# slot order)
# ---------------------------------------------------------------------------

def random_graph(rng, n: int, p: float = 0.5) -> Graph:
    mask = 0
    for s in range(num_slots(n)):
        if rng.random() < p:
            mask |= 1 << s
    return Graph(n, mask)
