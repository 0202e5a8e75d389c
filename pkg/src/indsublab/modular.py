"""Modulo-p counting: residue and divisibility wrappers, the clique
mod-equivalence, the residue pipeline, and the parsimonious 3-SAT to
unique-clique gadget chain."""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .errors import InvariantError, PreconditionError
from .graphs import (
    Graph,
    HColoring,
    adjacency_masks,
    complete_graph,
    disjoint_union,
    edge_slot,
    induced_subgraph,
    make_graph,
)
from .params import GraphParameter
from .reductions import (
    OracleHandle,
    clique_to_cphom_instance,
    edge_filtered_host,
    subset_moebius,
)


def _require_prime(p: int):
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise PreconditionError(f"{p} is not prime")


def residue_oracle(base: OracleHandle, p: int) -> OracleHandle:
    """Wrap a counting oracle so it answers with residues mod p."""
    _require_prime(p)

    def impl(*args):
        val = base.impl(*args)
        return int(Fraction(val)) % p

    wrapped = OracleHandle(base.kind, base.parameter, impl)
    return wrapped


def divisibility_oracle(base: OracleHandle, p: int) -> OracleHandle:
    """Wrap a counting oracle so it answers whether the count is divisible
    by p."""
    _require_prime(p)

    def impl(*args):
        val = base.impl(*args)
        return int(Fraction(val)) % p == 0

    return OracleHandle(base.kind, base.parameter, impl)


def numclique_from_modclique(G: Graph, k: int, p: int, mod_oracle) -> int:
    """Recover the clique count mod p from a divisibility oracle by padding
    the host with 0..p-1 fresh disjoint k-cliques; exactly one padded host
    answers divisible."""
    _require_prime(p)
    if k < 1:
        raise PreconditionError("clique size must be >= 1")
    hits = []
    for i in range(p):
        padded = disjoint_union(G, *([complete_graph(k)] * i))
        if mod_oracle(padded, k):
            hits.append(i)
    if len(hits) != 1:
        raise InvariantError(f"divisibility oracle answered true {len(hits)} times")
    return (p - hits[0]) % p


def mod_p_clique_via_indsub(
    ell: int, k: int, phi: GraphParameter, F: Graph, G: Graph, p: int
):
    """Clique count mod p through the reduction pipeline with all arithmetic
    in the prime field; only residue answers of the uncolored induced-sum
    oracle are consumed."""
    from .counting import indsub_value
    from .enumerator import alternating_enumerator

    _require_prime(p)
    if F.n != k:
        raise PreconditionError("pattern size must equal k")
    chi_full = alternating_enumerator(phi, F)
    if chi_full.denominator != 1:
        raise PreconditionError("residue pipeline needs an integer-valued enumerator")
    coeff = (int(chi_full) * (-1) ** F.edge_count) % p
    if coeff == 0:
        raise PreconditionError("alternating enumerator vanishes mod p")
    if phi.codomain_bound is not None and phi.codomain_bound(k) >= p:
        raise PreconditionError("codomain bound must stay below p")

    coloring = clique_to_cphom_instance(ell, F, G)
    bottom = OracleHandle(
        "indsub", phi, lambda GG, kk: int(indsub_value(phi, kk, GG)) % p
    )

    def cp_residue(col: HColoring) -> int:
        total = 0
        classes = col.classes()
        for J in range(1 << k):
            keep = [v for v in range(col.host.n) if not J >> col.map[v] & 1]
            GJ = induced_subgraph(col.host, keep)
            sign = -1 if J.bit_count() % 2 else 1
            total += sign * bottom.query(GJ, k)
        return total % p

    cp_oracle = OracleHandle("cpindsub", phi, cp_residue)

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
    top = terms[(1 << e) - 1] % p
    residue = top * pow(coeff, p - 2, p) % p
    return residue, bottom


# ---------------------------------------------------------------------------
# 3-CNF formulas
# ---------------------------------------------------------------------------

class Cnf3:
    """3-CNF with DIMACS-style signed literals (variables are 1-based)."""

    def __init__(self, n: int, clauses):
        clauses = [tuple(c) for c in clauses]
        if n < 1:
            raise PreconditionError("need at least one variable")
        for c in clauses:
            if len(c) != 3:
                raise PreconditionError(f"clause {c!r} must have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > n:
                    raise PreconditionError(f"literal {lit} out of range")
        self.n = n
        self.clauses = tuple(clauses)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfying_assignments(self) -> list[tuple[bool, ...]]:
        out = []
        for bits in range(1 << self.n):
            assign = tuple(bool(bits >> i & 1) for i in range(self.n))
            if all(self._clause_ok(c, assign) for c in self.clauses):
                out.append(assign)
        return out

    @staticmethod
    def _clause_ok(clause, assign) -> bool:
        return any(
            assign[abs(lit) - 1] == (lit > 0) for lit in clause
        )


def parse_dimacs(text: str) -> Cnf3:
    n = None
    clauses = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise ValueError("malformed DIMACS header")
            n = int(parts[2])
            continue
        lits = [int(x) for x in line.split()]
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        if lits:
            clauses.append(tuple(lits))
    if n is None:
        raise ValueError("missing DIMACS header")
    return Cnf3(n, clauses)


# ---------------------------------------------------------------------------
# 3-SAT -> 3-coloring gadget
# ---------------------------------------------------------------------------

T, F, B = 0, 1, 2  # palette

# Gadget-internal edges for one clause, on symbols:
#   inputs L1, L2, L3 (literal vertices) and fresh y1..y6; two chained
#   or-gadgets with output y6.
_GADGET_EDGES = [
    ("L1", "y1"),
    ("L2", "y2"),
    ("y1", "y2"),
    ("y1", "y3"),
    ("y2", "y3"),
    ("y3", "y4"),
    ("L3", "y5"),
    ("y4", "y5"),
    ("y4", "y6"),
    ("y5", "y6"),
]


def _canonical_gadget_colorings() -> dict[tuple[int, int, int], tuple[int, ...]]:
    """For each satisfying T/F assignment of the three literals, the
    lexicographically smallest proper gadget coloring with output T."""
    table = {}
    ys = ["y1", "y2", "y3", "y4", "y5", "y6"]
    for assign in iproduct((T, F), repeat=3):
        if all(a == F for a in assign):
            continue
        best = None
        for colors in iproduct((T, F, B), repeat=6):
            if colors[5] != T:
                continue
            env = {"L1": assign[0], "L2": assign[1], "L3": assign[2]}
            env.update(zip(ys, colors))
            if all(env[a] != env[b] for a, b in _GADGET_EDGES):
                if best is None or colors < best:
                    best = colors
        if best is None:
            raise InvariantError("or-gadget has no proper coloring with true output")
        table[assign] = best
    return table


_GADGET_TABLE = None


def _gadget_table():
    global _GADGET_TABLE
    if _GADGET_TABLE is None:
        _GADGET_TABLE = _canonical_gadget_colorings()
    return _GADGET_TABLE


class ColoringGadget:
    """The 3-coloring instance for a formula: anchor triangle, literal pairs,
    and one six-vertex clause gadget per clause, plus the canonical
    valid-coloring table."""

    def __init__(self, cnf: Cnf3):
        if cnf.m < 1:
            raise PreconditionError("need at least one clause")
        self.cnf = cnf
        n, m = cnf.n, cnf.m
        self.n_vertices = 3 + 2 * n + 6 * m
        self.roles: dict[int, str] = {0: "T-anchor", 1: "F-anchor", 2: "B-anchor"}
        for i in range(n):
            self.roles[3 + 2 * i] = f"literal({i + 1},+)"
            self.roles[3 + 2 * i + 1] = f"literal({i + 1},-)"
        for j in range(m):
            for t in range(6):
                self.roles[3 + 2 * n + 6 * j + t] = f"clause({j + 1},{t + 1})"
        self.valid_colorings = _gadget_table()
        self.graph = self._build_graph()

    def literal_vertex(self, lit: int) -> int:
        idx = 3 + 2 * (abs(lit) - 1)
        return idx if lit > 0 else idx + 1

    def gadget_vertex(self, clause_idx: int, t: int) -> int:
        return 3 + 2 * self.cnf.n + 6 * clause_idx + (t - 1)

    def _build_graph(self) -> Graph:
        edges = [(0, 1), (0, 2), (1, 2)]
        for i in range(self.cnf.n):
            x = 3 + 2 * i
            edges += [(x, x + 1), (2, x), (2, x + 1)]
        for j, clause in enumerate(self.cnf.clauses):
            sym = {
                "L1": self.literal_vertex(clause[0]),
                "L2": self.literal_vertex(clause[1]),
                "L3": self.literal_vertex(clause[2]),
            }
            for t in range(1, 7):
                sym[f"y{t}"] = self.gadget_vertex(j, t)
            for a, b in _GADGET_EDGES:
                edges.append((min(sym[a], sym[b]), max(sym[a], sym[b])))
            edges.append((1, sym["y6"]))
            edges.append((2, sym["y6"]))
        return make_graph(self.n_vertices, sorted(set(edges)))


def sat_to_coloring_graph(cnf: Cnf3) -> ColoringGadget:
    return ColoringGadget(cnf)


def count_valid_proper_colorings(gadget: ColoringGadget) -> int:
    """Proper 3-colorings that fix the anchors and use the canonical gadget
    coloring in every clause; found by backtracking over literal pairs with
    gadget colorings forced from the table."""
    cnf = gadget.cnf
    G = gadget.graph
    table = gadget.valid_colorings
    count = 0
    colors = [T, F, B] + [-1] * (G.n - 3)
    adj = adjacency_masks(G)

    def proper_here(v: int) -> bool:
        m = adj[v]
        while m:
            b = m & -m
            u = b.bit_length() - 1
            if colors[u] != -1 and colors[u] == colors[v]:
                return False
            m ^= b
        return True

    def rec_var(i: int):
        nonlocal count
        if i == cnf.n:
            rec_clause(0)
            return
        x = 3 + 2 * i
        for val in (T, F):
            colors[x] = val
            colors[x + 1] = F if val == T else T
            if proper_here(x) and proper_here(x + 1):
                rec_var(i + 1)
        colors[x] = colors[x + 1] = -1

    def rec_clause(j: int):
        nonlocal count
        if j == cnf.m:
            count += 1
            return
        clause = cnf.clauses[j]
        assign = tuple(colors[gadget.literal_vertex(lit)] for lit in clause)
        row = table.get(assign)
        if row is None:
            return
        vs = [gadget.gadget_vertex(j, t) for t in range(1, 7)]
        for v, c in zip(vs, row):
            colors[v] = c
        if all(proper_here(v) for v in vs):
            rec_clause(j + 1)
        for v in vs:
            colors[v] = -1

    rec_var(0)
    return count


# ---------------------------------------------------------------------------
# 3-coloring -> clique graph
# ---------------------------------------------------------------------------

def _split_chunks(count: int, k: int) -> list[list[int]]:
    out = [[] for _ in range(k)]
    for i in range(count):
        out[i * k // count].append(i)
    return out


def _group_colorings(gadget: ColoringGadget, k: int):
    """Vertex groups of the clique graph: the anchor triple, k literal groups,
    and k clause groups, each with its list of valid partial colorings."""
    cnf = gadget.cnf
    if k > cnf.n or k > cnf.m:
        raise PreconditionError("group count must not exceed variables or clauses")
    groups = []
    groups.append(([0, 1, 2], [{0: T, 1: F, 2: B}]))
    for chunk in _split_chunks(cnf.n, k):
        verts = []
        for i in chunk:
            verts += [3 + 2 * i, 3 + 2 * i + 1]
        cols = []
        for bits in range(1 << len(chunk)):
            f = {}
            for pos, i in enumerate(chunk):
                val = T if bits >> pos & 1 else F
                f[3 + 2 * i] = val
                f[3 + 2 * i + 1] = F if val == T else T
            cols.append(f)
        groups.append((verts, cols))
    table = gadget.valid_colorings
    for chunk in _split_chunks(cnf.m, k):
        verts_set = set()
        touched_vars = sorted(
            {abs(lit) - 1 for j in chunk for lit in cnf.clauses[j]}
        )
        for j in chunk:
            for lit in cnf.clauses[j]:
                verts_set.add(gadget.literal_vertex(lit))
                verts_set.add(gadget.literal_vertex(-lit))
            for t in range(1, 7):
                verts_set.add(gadget.gadget_vertex(j, t))
        verts = sorted(verts_set)
        cols = []
        for bits in range(1 << len(touched_vars)):
            assign = {touched_vars[pos]: bool(bits >> pos & 1) for pos in range(len(touched_vars))}
            f = {}
            ok = True
            for i in assign:
                f[3 + 2 * i] = T if assign[i] else F
                f[3 + 2 * i + 1] = F if assign[i] else T
            for j in chunk:
                clause = cnf.clauses[j]
                lit_cols = tuple(f[gadget.literal_vertex(lit)] for lit in clause)
                row = table.get(lit_cols)
                if row is None:
                    ok = False
                    break
                for t in range(1, 7):
                    f[gadget.gadget_vertex(j, t)] = row[t - 1]
            if ok:
                cols.append({v: f[v] for v in verts})
        groups.append((verts, cols))
    return groups


def coloring_to_clique_graph(gadget: ColoringGadget, cnf: Cnf3, k: int) -> Graph:
    """Compatibility graph on (group, valid coloring) pairs: its cliques of
    size 2k+1 are in bijection with the proper-and-valid colorings, hence with
    the satisfying assignments."""
    G_phi = gadget.graph
    groups = _group_colorings(gadget, k)
    vertices = []
    for gid, (verts, cols) in enumerate(groups):
        for f in cols:
            vertices.append((gid, verts, f))
    n = len(vertices)
    edges = []
    for a in range(n):
        ga, va, fa = vertices[a]
        for b in range(a + 1, n):
            gb, vb, fb = vertices[b]
            if ga == gb:
                continue
            ok = True
            for v in fa:
                if v in fb and fa[v] != fb[v]:
                    ok = False
                    break
            if ok:
                union = {**fa, **fb}
                for u, w in G_phi.edges():
                    if u in union and w in union and union[u] == union[w]:
                        ok = False
                        break
            if ok:
                edges.append((a, b))
    return make_graph(n, edges)
