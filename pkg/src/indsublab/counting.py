"""Counting engines: induced-subgraph sums, homomorphisms, subgraph counts,
the bounded-vertex-cover subgraph counter, and the FPT induced-sum path."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .errors import InvariantError, PreconditionError
from .graphs import (
    Graph,
    HColoring,
    adjacency_masks,
    automorphism_count,
    canonical_key,
    edge_slot,
    edge_subgraph_mask,
    enumerate_canonical_graphs,
    induced_subgraph,
    minimum_vertex_cover,
    num_slots,
    slot_pairs,
)
from .params import GraphParameter, evaluate

INDSUB_HOST_CAP = 12      # public induced-sum entry point
PATTERN_CAP = 6           # brute-force pattern size bound
CP_HOST_CAP = 20          # colorful sweep host bound
VC_FAST_CAP = 3           # vertex-cover bound for the fast subgraph counter
_NUMPY_THRESHOLD = 3000  # subsets above which the vectorized sweep kicks in
_SUBSET_HARD_CAP = 6_000_000


# ---------------------------------------------------------------------------
# Induced-subgraph sums
# ---------------------------------------------------------------------------

def count_indsub(phi: GraphParameter, k: int, G: Graph) -> Fraction:
    """Sum of phi over all k-vertex induced subgraphs (host capped at
    INDSUB_HOST_CAP vertices)."""
    if G.n > INDSUB_HOST_CAP:
        raise PreconditionError(f"count_indsub capped at n <= {INDSUB_HOST_CAP}")
    return indsub_value(phi, k, G)


def indsub_value(phi: GraphParameter, k: int, G: Graph) -> Fraction:
    """Uncapped exact induced-sum; the oracle entry point for reductions,
    whose query hosts exceed the public cap."""
    if k <= 0:
        raise PreconditionError("subgraph size k must be >= 1")
    n = G.n
    if k > n:
        return Fraction(0)
    total_subsets = comb(n, k)
    if total_subsets > _SUBSET_HARD_CAP:
        raise PreconditionError("induced-sum host too large")
    if k <= 6 and total_subsets > _NUMPY_THRESHOLD:
        return _indsub_vectorized(phi, k, G)
    sm = [[edge_slot(i, j, k) if i != j else 0 for j in range(k)] for i in range(k)]
    adj = adjacency_masks(G)
    if k > 6:
        total = Fraction(0)
        for A in combinations(range(n), k):
            m = 0
            for i in range(k):
                nbr = adj[A[i]]
                for j in range(i + 1, k):
                    if nbr >> A[j] & 1:
                        m |= 1 << sm[i][j]
            total += evaluate(phi, Graph(k, m))
        return total
    counts = [0] * (1 << num_slots(k))
    for A in combinations(range(n), k):
        m = 0
        for i in range(k):
            nbr = adj[A[i]]
            for j in range(i + 1, k):
                if nbr >> A[j] & 1:
                    m |= 1 << sm[i][j]
        counts[m] += 1
    vals = _mask_value_table(phi, k)
    total = Fraction(0)
    for m, c in enumerate(counts):
        if c:
            total += c * vals[m]
    return total


def _mask_value_table(phi: GraphParameter, k: int) -> list[Fraction]:
    """phi evaluated on every k-vertex edge bitmap (k <= 6)."""
    cache = getattr(phi, "_mask_tables", None)
    if cache is None:
        cache = {}
        phi._mask_tables = cache
    tbl = cache.get(k)
    if tbl is None:
        from .graphs import _canon_table

        if k <= 1:
            tbl = [evaluate(phi, Graph(k, 0))]
        else:
            canon = _canon_table(k)
            by_rep = {
                rep: evaluate(phi, Graph(k, rep)) for rep in sorted(set(canon))
            }
            tbl = [by_rep[canon[m]] for m in range(1 << num_slots(k))]
        cache[k] = tbl
    return tbl


_combo_cache: dict[tuple[int, int], np.ndarray] = {}
_class_tables: dict[int, tuple[np.ndarray, list[int]]] = {}


def _combo_array(n: int, k: int) -> np.ndarray:
    arr = _combo_cache.get((n, k))
    if arr is None:
        arr = np.array(list(combinations(range(n), k)), dtype=np.int16)
        _combo_cache[(n, k)] = arr
    return arr


def _class_table(k: int) -> tuple[np.ndarray, list[int]]:
    got = _class_tables.get(k)
    if got is None:
        from .graphs import _canon_table

        canon = _canon_table(k)
        reps = sorted(set(canon))
        index = {rep: i for i, rep in enumerate(reps)}
        cid = np.array([index[c] for c in canon], dtype=np.int32)
        got = (cid, reps)
        _class_tables[k] = got
    return got


def _indsub_vectorized(phi: GraphParameter, k: int, G: Graph) -> Fraction:
    n = G.n
    combos = _combo_array(n, k)
    adj = np.zeros((n, n), dtype=np.int32)
    for u, v in G.edges():
        adj[u, v] = 1
        adj[v, u] = 1
    acc = np.zeros(len(combos), dtype=np.int32)
    pairs = slot_pairs(k)
    for s, (i, j) in enumerate(pairs):
        acc |= adj[combos[:, i], combos[:, j]] << s
    cid, reps = _class_table(k)
    counts = np.bincount(cid[acc], minlength=len(reps))
    total = Fraction(0)
    for idx, rep in enumerate(reps):
        c = int(counts[idx])
        if c:
            total += c * evaluate(phi, Graph(k, rep))
    return total


def count_cp_indsub(phi: GraphParameter, coloring: HColoring) -> Fraction:
    """Sum of phi over colorful induced subgraphs (one vertex per color class)."""
    if coloring.pattern.n > PATTERN_CAP:
        raise PreconditionError(f"colorful sweep capped at |V(H)| <= {PATTERN_CAP}")
    if coloring.host.n > CP_HOST_CAP:
        raise PreconditionError(f"colorful sweep capped at |V(G)| <= {CP_HOST_CAP}")
    classes = coloring.classes()
    if any(not cls for cls in classes):
        return Fraction(0)
    G = coloring.host
    k = len(classes)
    total = Fraction(0)

    def rec(i: int, chosen: list[int]):
        nonlocal total
        if i == k:
            total += evaluate(phi, induced_subgraph(G, chosen))
            return
        for v in classes[i]:
            chosen.append(v)
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    return total


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

def count_hom(H: Graph, G: Graph) -> int:
    """Number of (not necessarily injective) homomorphisms from H to G."""
    if H.n > PATTERN_CAP:
        raise PreconditionError(f"homomorphism pattern capped at |V(H)| <= {PATTERN_CAP}")
    if H.n == 0:
        return 1
    hadj = adjacency_masks(H)
    gadj = adjacency_masks(G)
    image = [0] * H.n
    count = 0

    def rec(i: int):
        nonlocal count
        if i == H.n:
            count += 1
            return
        earlier = hadj[i] & ((1 << i) - 1)
        for g in range(G.n):
            m = earlier
            ok = True
            while m:
                b = m & -m
                if not gadj[image[b.bit_length() - 1]] >> g & 1:
                    ok = False
                    break
                m ^= b
            if ok:
                image[i] = g
                rec(i + 1)

    rec(0)
    return count


def count_cphom(coloring: HColoring, pattern: Graph | None = None) -> int:
    """Color-prescribed homomorphisms: vertex v of the pattern must land in
    color class v.  ``pattern`` defaults to the coloring's pattern; passing an
    edge-subgraph of it counts homomorphisms of that reduced pattern."""
    H = pattern if pattern is not None else coloring.pattern
    if H.n != coloring.pattern.n:
        raise PreconditionError("pattern size must match the coloring")
    classes = coloring.classes()
    gadj = adjacency_masks(coloring.host)
    hadj = adjacency_masks(H)
    image = [0] * H.n
    count = 0

    def rec(i: int):
        nonlocal count
        if i == H.n:
            count += 1
            return
        earlier = hadj[i] & ((1 << i) - 1)
        for g in classes[i]:
            m = earlier
            ok = True
            while m:
                b = m & -m
                if not gadj[image[b.bit_length() - 1]] >> g & 1:
                    ok = False
                    break
                m ^= b
            if ok:
                image[i] = g
                rec(i + 1)

    rec(0)
    return count


# ---------------------------------------------------------------------------
# Subgraph counting
# ---------------------------------------------------------------------------

def count_injective_homs(H: Graph, G: Graph) -> int:
    hadj = adjacency_masks(H)
    gadj = adjacency_masks(G)
    image = [0] * H.n
    used = 0
    count = 0

    def rec(i: int):
        nonlocal count, used
        if i == H.n:
            count += 1
            return
        earlier = hadj[i] & ((1 << i) - 1)
        for g in range(G.n):
            if used >> g & 1:
                continue
            m = earlier
            ok = True
            while m:
                b = m & -m
                if not gadj[image[b.bit_length() - 1]] >> g & 1:
                    ok = False
                    break
                m ^= b
            if ok:
                image[i] = g
                used |= 1 << g
                rec(i + 1)
                used &= ~(1 << g)

    rec(0)
    return count


def count_sub_brute(H: Graph, G: Graph) -> int:
    """Subgraph copies via injective homomorphisms divided by |Aut(H)|."""
    if H.n > PATTERN_CAP:
        raise PreconditionError(f"subgraph pattern capped at |V(H)| <= {PATTERN_CAP}")
    if H.n > G.n:
        return 0
    inj = count_injective_homs(H, G)
    aut = automorphism_count(H)
    if inj % aut:
        raise InvariantError("injective homomorphism count not divisible by |Aut|")
    return inj // aut


def _set_partitions(items: list):
    """All partitions of ``items`` into nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def count_sub_vc(H: Graph, G: Graph) -> int:
    """Subgraph copies by enumerating images of a minimum vertex cover and
    counting injective extensions of the independent remainder with
    inclusion-exclusion over coincidences."""
    if H.n > G.n:
        return 0
    cover = minimum_vertex_cover(H)
    if len(cover) > VC_FAST_CAP:
        raise PreconditionError(f"fast subgraph counter needs VC <= {VC_FAST_CAP}")
    rest = [v for v in range(H.n) if v not in cover]
    hadj = adjacency_masks(H)
    gadj = adjacency_masks(G)
    full = (1 << G.n) - 1
    partitions = list(_set_partitions(list(range(len(rest)))))

    total = 0
    t = len(cover)
    image = [0] * t

    def extension_count() -> int:
        placed = 0
        for g in image:
            placed |= 1 << g
        allowed = []
        for r in rest:
            m = full & ~placed
            nb = hadj[r]
            for ci, cv in enumerate(cover):
                if nb >> cv & 1:
                    m &= gadj[image[ci]]
            allowed.append(m)
        result = 0
        for part in partitions:
            term = 1
            for block in part:
                inter = full
                for ri in block:
                    inter &= allowed[ri]
                size = len(block)
                coeff = (-1) ** (size - 1)
                fact = 1
                for x in range(1, size):
                    fact *= x
                term *= coeff * fact * inter.bit_count()
                if term == 0:
                    break
            result += term
        return result

    def rec(i: int, used: int):
        nonlocal total
        if i == t:
            total += extension_count()
            return
        earlier = hadj[cover[i]]
        for g in range(G.n):
            if used >> g & 1:
                continue
            ok = True
            for j in range(i):
                if earlier >> cover[j] & 1 and not gadj[image[j]] >> g & 1:
                    ok = False
                    break
            if ok:
                image[i] = g
                rec(i + 1, used | 1 << g)

    rec(0, 0)
    aut = automorphism_count(H)
    if total % aut:
        raise InvariantError("vertex-cover subgraph count not divisible by |Aut|")
    return total // aut


def count_sub(H: Graph, G: Graph) -> int:
    """Number of subgraphs of G isomorphic to H (brute force for small hosts,
    vertex-cover extension otherwise)."""
    if H.n <= PATTERN_CAP and G.n <= INDSUB_HOST_CAP:
        return count_sub_brute(H, G)
    return count_sub_vc(H, G)


def count_cliques(G: Graph, size: int) -> int:
    """Exact number of ``size``-cliques, by ordered enumeration with candidate
    intersection."""
    if size < 0:
        raise PreconditionError("clique size must be >= 0")
    if size == 0:
        return 1
    adj = adjacency_masks(G)
    count = 0

    def rec(cand: int, need: int):
        nonlocal count
        if need == 0:
            count += 1
            return
        while cand:
            if cand.bit_count() < need:
                return
            b = cand & -cand
            v = b.bit_length() - 1
            cand ^= b
            rec(cand & adj[v], need - 1)

    rec((1 << G.n) - 1, size)
    return count


# ---------------------------------------------------------------------------
# FPT induced-sum path
# ---------------------------------------------------------------------------

FPT_SIZE_CAP = 5


def fpt_indsub(phi: GraphParameter, k: int, G: Graph, tau: int) -> Fraction:
    """Induced-sum via the subgraph-basis expansion, keeping only terms with a
    nonvanishing coefficient; every such term must have vertex cover <= tau
    (verified exhaustively), so each subgraph count uses the fast path."""
    from .enumerator import alternating_enumerator
    from .graphs import vertex_cover_number

    if k > FPT_SIZE_CAP:
        raise PreconditionError(f"fpt induced-sum capped at k <= {FPT_SIZE_CAP}")
    terms = []
    for cg in enumerate_canonical_graphs(k):
        chi = alternating_enumerator(phi, cg.graph)
        if chi == 0:
            continue
        if vertex_cover_number(cg.graph) > tau:
            raise PreconditionError(
                f"nonvanishing term {cg.key} has vertex cover > {tau}"
            )
        terms.append((cg.graph, chi))
    total = Fraction(0)
    for Hg, chi in terms:
        total += (-1) ** Hg.edge_count * chi * count_sub_vc(Hg, G)
    return total


# ---------------------------------------------------------------------------
# Expansion reports
# ---------------------------------------------------------------------------

def verify_cpindsub_hom_expansion(phi: GraphParameter, coloring: HColoring) -> dict:
    """Compare the colorful induced sum against its signed expansion into
    color-prescribed homomorphism counts over all pattern edge subsets."""
    from .enumerator import alternating_enumerator

    H = coloring.pattern
    if H.edge_count > 10:
        raise PreconditionError("expansion capped at patterns with <= 10 edges")
    lhs = count_cp_indsub(phi, coloring)
    rhs = Fraction(0)
    terms = []
    sub = H.mask
    while True:
        HA = edge_subgraph_mask(H, sub)
        chi = alternating_enumerator(phi, HA)
        if chi != 0:
            hom = count_cphom(coloring, HA)
            sign = (-1) ** HA.edge_count
            rhs += sign * chi * hom
            terms.append(
                {
                    "edges": [list(e) for e in HA.edges()],
                    "sign": sign,
                    "chi": str(chi),
                    "cphom": str(hom),
                }
            )
        if sub == 0:
            break
        sub = (sub - 1) & H.mask
    return {"lhs": str(lhs), "rhs": str(rhs), "equal": lhs == rhs, "terms": terms}


def verify_clique_colored_expansion(phi: GraphParameter, k: int, coloring: HColoring) -> dict:
    """Expansion of the colorful induced sum over a complete-pattern coloring.

    The verified identity sums over all labeled edge sets of the complete
    pattern; the per-class table with factorial-over-automorphism weights is
    reported alongside (the collapsed per-class form assumes class members
    contribute equal homomorphism counts, which need not hold for every host).
    """
    from .enumerator import alternating_enumerator

    if k > 4:
        raise PreconditionError("complete-pattern expansion capped at k <= 4")
    Kk = coloring.pattern
    if Kk.n != k or Kk.mask != (1 << num_slots(k)) - 1:
        raise PreconditionError("coloring pattern must be the complete graph on k vertices")
    lhs = count_cp_indsub(phi, coloring)
    rhs = Fraction(0)
    per_class: dict[tuple, dict] = {}
    fact = 1
    for x in range(2, k + 1):
        fact *= x
    sub = Kk.mask
    while True:
        HA = edge_subgraph_mask(Kk, sub)
        chi = alternating_enumerator(phi, HA)
        if chi != 0:
            hom = count_cphom(coloring, HA)
            rhs += (-1) ** HA.edge_count * chi * hom
            key = canonical_key(HA)
            entry = per_class.setdefault(
                key,
                {
                    "class": key,
                    "chi": str(chi),
                    "weight": str(
                        Fraction(fact, automorphism_count(HA))
                        * (-1) ** HA.edge_count
                        * chi
                    ),
                    "cphom_sum": 0,
                },
            )
            entry["cphom_sum"] += hom
        if sub == 0:
            break
        sub = (sub - 1) & Kk.mask
    table = sorted(per_class.values(), key=lambda e: e["class"])
    for entry in table:
        entry["class"] = list(entry["class"])
        entry["cphom_sum"] = str(entry["cphom_sum"])
    return {"lhs": str(lhs), "rhs": str(rhs), "equal": lhs == rhs, "classes": table}
