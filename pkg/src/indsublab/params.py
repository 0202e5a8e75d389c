"""Graph parameters: exact-rational evaluators and the algebra on them."""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import InvariantError, PreconditionError
from .graphs import (
    CANON_CAP,
    Graph,
    adjacency_masks,
    canonical_key,
    connected_components,
    edge_subgraph_mask,
    enumerate_canonical_graphs,
    is_connected,
    num_slots,
)

CHROMATIC_CAP = 10
SUBSET_SWEEP_CAP = 16  # 2^n style evaluators (independence, matchings, paths)


class GraphParameter:
    """Named isomorphism-invariant map from graphs to exact rationals.

    Evaluations are memoized by canonical form (raw bitmap beyond the
    canonicalization cap, where isomorphic repeats are rare anyway).
    """

    def __init__(self, name, func, codomain_bound=None, declared_edge_monotone=None):
        self.name = name
        self._func = func
        self.codomain_bound = codomain_bound
        self.declared_edge_monotone = declared_edge_monotone
        self._memo: dict[tuple, Fraction] = {}
        self._chi_memo: dict[tuple, Fraction] = {}  # used by the enumerator

    def __call__(self, G: Graph) -> Fraction:
        return evaluate(self, G)

    def __repr__(self) -> str:
        return f"GraphParameter({self.name!r})"


def _memo_key(G: Graph) -> tuple:
    if G.n <= 6:
        return canonical_key(G)
    return (G.n, G.mask, "raw")


def evaluate(phi: GraphParameter, G: Graph) -> Fraction:
    key = _memo_key(G)
    memo = phi._memo
    val = memo.get(key)
    if val is None:
        val = Fraction(phi._func(G))
        memo[key] = val
    return val


class IndicatorParameter(GraphParameter):
    """0/1 parameter marking where a base parameter takes one fixed value."""

    def __init__(self, base: GraphParameter, level):
        self.base = base
        self.level = Fraction(level)
        super().__init__(
            name=f"{base.name}^{self.level}",
            func=lambda G: Fraction(1) if evaluate(base, G) == self.level else Fraction(0),
            codomain_bound=lambda k: 1,
        )


# ---------------------------------------------------------------------------
# Built-in parameters
# ---------------------------------------------------------------------------

def _component_count(G: Graph) -> int:
    return max(len(connected_components(G)), 0)


def _max_degree(G: Graph) -> int:
    return max((G.degree(v) for v in range(G.n)), default=0)


def _chromatic_number(G: Graph) -> int:
    if G.n > CHROMATIC_CAP:
        raise PreconditionError(f"chromatic number capped at n <= {CHROMATIC_CAP}")
    if G.n == 0:
        return 0
    if G.mask == 0:
        return 1
    adj = adjacency_masks(G)
    order = sorted(range(G.n), key=lambda v: -adj[v].bit_count())

    def colorable(c: int) -> bool:
        colors = [-1] * G.n

        def rec(i: int) -> bool:
            if i == G.n:
                return True
            v = order[i]
            used = max(colors[order[j]] for j in range(i)) if i else -1
            for col in range(min(used + 2, c)):
                ok = True
                m = adj[v]
                while m:
                    b = m & -m
                    u = b.bit_length() - 1
                    if colors[u] == col:
                        ok = False
                        break
                    m ^= b
                if ok:
                    colors[v] = col
                    if rec(i + 1):
                        return True
                    colors[v] = -1
            return False

        return rec(0)

    for c in range(2, G.n + 1):
        if colorable(c):
            return c
    return G.n


def _independence_number(G: Graph) -> int:
    if G.n > SUBSET_SWEEP_CAP:
        raise PreconditionError(f"independence number capped at n <= {SUBSET_SWEEP_CAP}")
    adj = adjacency_masks(G)

    def rec(cand: int) -> int:
        if cand == 0:
            return 0
        b = cand & -cand
        v = b.bit_length() - 1
        with_v = 1 + rec(cand & ~(adj[v] | b))
        without_v = rec(cand ^ b)
        return max(with_v, without_v)

    return rec((1 << G.n) - 1)


def _universal_vertex_count(G: Graph) -> int:
    # Equals the number of spanning-star subgraphs, so the 2-vertex case
    # counts the edge rather than both endpoints.
    if G.n == 1:
        return 1
    if G.n == 2:
        return G.edge_count
    full = (1 << G.n) - 1
    adj = adjacency_masks(G)
    return sum(1 for v in range(G.n) if adj[v] | 1 << v == full)


def _hamiltonian_path_count(G: Graph) -> int:
    n = G.n
    if n > SUBSET_SWEEP_CAP:
        raise PreconditionError(f"hamiltonian paths capped at n <= {SUBSET_SWEEP_CAP}")
    if n == 0:
        return 0
    if n == 1:
        return 1
    adj = adjacency_masks(G)
    dp = [[0] * n for _ in range(1 << n)]
    for v in range(n):
        dp[1 << v][v] = 1
    for mask in range(1 << n):
        row = dp[mask]
        for v in range(n):
            c = row[v]
            if not c:
                continue
            free = adj[v] & ~mask
            while free:
                b = free & -free
                u = b.bit_length() - 1
                dp[mask | b][u] += c
                free ^= b
    full = (1 << n) - 1
    return sum(dp[full]) // 2


def _perfect_matching_count(G: Graph) -> int:
    n = G.n
    if n > SUBSET_SWEEP_CAP:
        raise PreconditionError(f"perfect matchings capped at n <= {SUBSET_SWEEP_CAP}")
    if n % 2:
        return 0
    adj = adjacency_masks(G)

    def rec(unmatched: int) -> int:
        if unmatched == 0:
            return 1
        b = unmatched & -unmatched
        v = b.bit_length() - 1
        total = 0
        free = adj[v] & unmatched & ~b
        while free:
            c = free & -free
            total += rec(unmatched & ~(b | c))
            free ^= c
        return total

    return rec((1 << n) - 1)


def _builtin(name, func, bound=None, monotone=None) -> GraphParameter:
    return GraphParameter(name, func, codomain_bound=bound, declared_edge_monotone=monotone)


def _make_edge_power(c: int) -> GraphParameter:
    if c < 1:
        raise PreconditionError("edge power exponent must be >= 1")
    return _builtin(
        f"edge-power:{c}",
        lambda G: Fraction(G.edge_count) ** c,
        bound=lambda k: comb(k, 2) ** c,
    )


BUILTIN_FACTORIES = {
    "connected": lambda: _builtin(
        "connected", lambda G: int(is_connected(G)), bound=lambda k: 1, monotone=False
    ),
    "disconnected": lambda: _builtin(
        "disconnected", lambda G: int(not is_connected(G)), bound=lambda k: 1, monotone=True
    ),
    "components": lambda: _builtin(
        "components", _component_count, bound=lambda k: k, monotone=True
    ),
    "max-degree": lambda: _builtin(
        "max-degree", _max_degree, bound=lambda k: max(k - 1, 0)
    ),
    "chromatic": lambda: _builtin("chromatic", _chromatic_number, bound=lambda k: k),
    "independence": lambda: _builtin(
        "independence", _independence_number, bound=lambda k: k, monotone=True
    ),
    "universal-vertices": lambda: _builtin(
        "universal-vertices", _universal_vertex_count, bound=lambda k: k
    ),
    "hamiltonian-paths": lambda: _builtin("hamiltonian-paths", _hamiltonian_path_count),
    "perfect-matchings": lambda: _builtin("perfect-matchings", _perfect_matching_count),
    "clique": lambda: _builtin(
        "clique",
        lambda G: int(G.mask == (1 << num_slots(G.n)) - 1),
        bound=lambda k: 1,
        monotone=False,
    ),
    "independent-set": lambda: _builtin(
        "independent-set", lambda G: int(G.mask == 0), bound=lambda k: 1, monotone=True
    ),
    "edge-parity": lambda: _builtin(
        "edge-parity", lambda G: G.edge_count % 2, bound=lambda k: 1
    ),
}


def builtin_parameter(spec: str) -> GraphParameter:
    """Parse a parameter spec string: "name", "name:arg", or "table:<path>"."""
    if spec.startswith("table:"):
        return load_table_parameter(spec[len("table:"):])
    if spec.startswith("edge-power:"):
        return _make_edge_power(int(spec.split(":", 1)[1]))
    factory = BUILTIN_FACTORIES.get(spec)
    if factory is None:
        raise PreconditionError(f"unknown parameter spec {spec!r}")
    return factory()


_standard_cache: list[GraphParameter] | None = None


def standard_parameters() -> list[GraphParameter]:
    """The shipped parameter battery used by the verification suites.
    Instances are shared so their memo tables persist across suites."""
    global _standard_cache
    if _standard_cache is None:
        out = [factory() for factory in BUILTIN_FACTORIES.values()]
        out.extend(_make_edge_power(c) for c in (1, 2, 3))
        _standard_cache = out
    return _standard_cache


def table_parameter(name: str, k: int, values: dict, default=0) -> GraphParameter:
    """Parameter defined by a per-isomorphism-class table for one size k.

    ``values`` maps canonical keys (as returned by ``canonical_key``) to
    rationals; sizes other than k evaluate to ``default``.
    """
    table = {key: Fraction(v) for key, v in values.items()}
    default = Fraction(default)
    mx = max((abs(v) for v in table.values()), default=Fraction(0))

    def func(G: Graph) -> Fraction:
        if G.n != k:
            return default
        return table.get(canonical_key(G), default)

    param = GraphParameter(name, func, codomain_bound=lambda kk: int(mx) if kk == k else 0)
    param.table = table
    param.table_size = k
    return param


def load_table_parameter(path: str) -> GraphParameter:
    from .graphs import from_graph6

    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    try:
        k = int(obj["k"])
        raw = obj["values"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed table parameter file: {exc}") from exc
    values = {}
    for g6, v in raw.items():
        g = from_graph6(g6)
        values[canonical_key(g)] = Fraction(str(v))
    return table_parameter(f"table:{path}", k, values)


# ---------------------------------------------------------------------------
# Parameter algebra
# ---------------------------------------------------------------------------

IMAGE_CAP = 6
MONOTONE_CAP = 5


def image_on(phi: GraphParameter, k: int) -> set[Fraction]:
    """Exact image of the parameter over the k-vertex isomorphism classes."""
    if k > IMAGE_CAP:
        raise PreconditionError(f"image computation capped at k <= {IMAGE_CAP}")
    return {evaluate(phi, cg.graph) for cg in enumerate_canonical_graphs(k)}


def indicator_decomposition(phi: GraphParameter, k: int):
    """One (value, indicator) pair per image value; their weighted sum is phi."""
    if k > IMAGE_CAP:
        raise PreconditionError(f"indicator decomposition capped at k <= {IMAGE_CAP}")
    return [(b, IndicatorParameter(phi, b)) for b in sorted(image_on(phi, k))]


def normalize_codomain(phi: GraphParameter, codomain):
    """Affine reencoding of a finite codomain into {0..c}.

    Returns (phi_prime, recover) where phi_prime = s + d*phi lands in {0..c}
    and recover(k, n, m) maps a size-k induced-sum of phi_prime over an
    n-vertex host back to the corresponding sum for phi.
    """
    dom = sorted({Fraction(x) for x in codomain})
    if not dom:
        raise PreconditionError("empty codomain")
    d = 1
    for x in dom:
        d = d * x.denominator // _gcd(d, x.denominator)
    s = -min(d * x for x in dom)
    c = max(d * x for x in dom) + s
    d = Fraction(d)
    s = Fraction(s)

    phi_prime = GraphParameter(
        name=f"normalized({phi.name})",
        func=lambda G: s + d * evaluate(phi, G),
        codomain_bound=lambda k: int(c),
        declared_edge_monotone=phi.declared_edge_monotone,
    )

    def recover(k: int, n: int, m) -> Fraction:
        return (Fraction(m) - s * comb(n, k)) / d

    return phi_prime, recover


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def is_edge_monotone_on(phi: GraphParameter, k: int) -> bool:
    """Exhaustive check that deleting edges never decreases the value on
    k-vertex graphs."""
    if k > MONOTONE_CAP:
        raise PreconditionError(f"edge-monotonicity check capped at k <= {MONOTONE_CAP}")
    for cg in enumerate_canonical_graphs(k):
        G = cg.graph
        base = evaluate(phi, G)
        sub = G.mask
        while True:
            if evaluate(phi, edge_subgraph_mask(G, sub)) < base:
                return False
            if sub == 0:
                break
            sub = (sub - 1) & G.mask
    return True


def is_nontrivial_on(phi: GraphParameter, k: int) -> bool:
    if k > IMAGE_CAP:
        raise PreconditionError(f"nontriviality check capped at k <= {IMAGE_CAP}")
    return len(image_on(phi, k)) >= 2


def random_monotone_table_parameter(rng, k: int, name: str | None = None) -> GraphParameter:
    """Sample a random edge-monotone 0/1 parameter on k-vertex graphs.

    Classes are processed in increasing edge count; each value is capped by
    the minimum over all proper edge-deletions, with the empty and complete
    graphs pinned to 1 and 0 so the result is nontrivial.
    """
    classes = sorted(enumerate_canonical_graphs(k), key=lambda cg: (cg.graph.edge_count, cg.key))
    values: dict[tuple, Fraction] = {}
    full = (1 << num_slots(k)) - 1
    for cg in classes:
        G = cg.graph
        if G.mask == 0:
            values[cg.key] = Fraction(1)
            continue
        cap = Fraction(1)
        for s in range(num_slots(k)):
            if G.mask >> s & 1:
                cap = min(cap, values[canonical_key(Graph(k, G.mask & ~(1 << s)))])
        if G.mask == full:
            val = Fraction(0)
        elif cap == 0:
            val = Fraction(0)
        else:
            val = Fraction(rng.randint(0, 1))
        values[cg.key] = val
    param = table_parameter(name or f"random-monotone-{k}", k, values)
    param.declared_edge_monotone = True
    param.codomain_bound = lambda kk: 1 if kk == k else 0
    return param
