"""Fixed-point lattices of permutation groups acting on edges, with the
explicit transitive p-group of the complete graph on p^m vertices, its
difference-graph-product fixed points, product groups, and the
nonvanishing-point search."""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .errors import InvariantError, PreconditionError
from .graphs import (
    Graph,
    complete_graph,
    contains_biclique,
    difference_graph,
    edge_slot,
    edge_subgraph_mask,
    independent_set,
    lexicographic_product,
    positive_half,
    relabel,
    slot_pairs,
)
from .params import GraphParameter, evaluate

GROUP_ORDER_CAP = 10 ** 6
HOST_SIZE_CAP = 9
ORBIT_MATERIALIZE_CAP = 20
EDGE_CAP = 64


class PermutationGroup:
    """Permutation group given by generators, with closure on demand."""

    def __init__(self, degree: int, generators):
        gens = [tuple(g) for g in generators]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise PreconditionError(f"{g!r} is not a permutation of [{degree}]")
        self.degree = degree
        self.generators = tuple(gens)
        self._elements: frozenset[tuple[int, ...]] | None = None

    def elements(self) -> frozenset[tuple[int, ...]]:
        if self._elements is None:
            ident = tuple(range(self.degree))
            els = {ident}
            frontier = [ident]
            while frontier:
                nxt = []
                for g in self.generators:
                    for h in frontier:
                        c = tuple(g[h[i]] for i in range(self.degree))
                        if c not in els:
                            els.add(c)
                            nxt.append(c)
                            if len(els) > GROUP_ORDER_CAP:
                                raise PreconditionError("group closure exceeds order cap")
                frontier = nxt
            self._elements = frozenset(els)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements())

    def is_transitive(self) -> bool:
        reach = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for g in self.generators:
                for x in frontier:
                    if g[x] not in reach:
                        reach.add(g[x])
                        nxt.append(g[x])
            frontier = nxt
        return len(reach) == self.degree


def trivial_group(degree: int) -> PermutationGroup:
    return PermutationGroup(degree, [tuple(range(degree))])


class FixedPointLattice:
    """Edge-orbit partition of a host plus the family of orbit-union fixed
    points, each addressed by an orbit-index bitmask."""

    def __init__(self, host: Graph, orbit_masks, group: PermutationGroup):
        self.host = host
        self.orbit_masks = tuple(orbit_masks)
        self.group = group

    def group_order(self) -> int:
        return self.group.order

    @property
    def orbits(self) -> list[list[tuple[int, int]]]:
        return [edge_subgraph_mask(self.host, m).edges() for m in self.orbit_masks]

    def point_mask(self, subset: int) -> int:
        m = 0
        for i, om in enumerate(self.orbit_masks):
            if subset >> i & 1:
                m |= om
        return m

    def point_graph(self, subset: int) -> Graph:
        return Graph(self.host.n, self.point_mask(subset))

    def level(self, subset: int) -> int:
        return subset.bit_count()

    def fixed_points(self) -> list[tuple[int, Graph]]:
        k = len(self.orbit_masks)
        if k > ORBIT_MATERIALIZE_CAP:
            raise PreconditionError(
                f"fixed points materialized only up to {ORBIT_MATERIALIZE_CAP} orbits"
            )
        return [(s, self.point_graph(s)) for s in range(1 << k)]

    def subset_of_graph(self, A: Graph) -> int:
        """Orbit-index subset realizing a fixed point given as a graph."""
        subset = 0
        rem = A.mask
        for i, om in enumerate(self.orbit_masks):
            if om & A.mask:
                if om & ~A.mask:
                    raise PreconditionError("graph is not a union of orbits")
                subset |= 1 << i
                rem &= ~om
        if rem:
            raise PreconditionError("graph has edges outside the host")
        return subset


def orbit_partition(group: PermutationGroup, H: Graph) -> FixedPointLattice:
    """Edge orbits of the induced action g.{u,v} = {g(u), g(v)}; every
    generator must be an automorphism of H."""
    if group.degree != H.n:
        raise PreconditionError("group degree must match the host")
    if H.edge_count > EDGE_CAP:
        raise PreconditionError(f"orbit partition capped at {EDGE_CAP} edges")
    for g in group.generators:
        if relabel(H, g).mask != H.mask:
            raise PreconditionError("a generator is not an automorphism of the host")
    pairs = slot_pairs(H.n)
    seen = 0
    orbit_masks = []
    for s in range(H.mask.bit_length()):
        if not H.mask >> s & 1 or seen >> s & 1:
            continue
        orbit = 1 << s
        frontier = [s]
        while frontier:
            nxt = []
            for g in group.generators:
                for t in frontier:
                    u, v = pairs[t]
                    t2 = edge_slot(g[u], g[v], H.n)
                    if not orbit >> t2 & 1:
                        orbit |= 1 << t2
                        nxt.append(t2)
            frontier = nxt
        seen |= orbit
        orbit_masks.append(orbit)
    return FixedPointLattice(H, orbit_masks, group)


# ---------------------------------------------------------------------------
# The transitive p-group on p^m points
# ---------------------------------------------------------------------------

def _tuple_index(coords, p: int, m: int) -> int:
    idx = 0
    for c in coords:
        idx = idx * p + c
    return idx


def _index_tuple(idx: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        out.append(idx % p)
        idx //= p
    return tuple(reversed(out))


def sylow_generators(p: int, m: int) -> PermutationGroup:
    """Generators of the transitive p-group on p^m points: one full increment
    per level plus one zero-prefix increment per level.  The order must be
    p^((p^m - 1)/(p - 1)), which is asserted by closure."""
    n = p ** m
    if n > HOST_SIZE_CAP:
        raise PreconditionError(f"group construction capped at p^m <= {HOST_SIZE_CAP}")
    points = [_index_tuple(i, p, m) for i in range(n)]
    gens = []
    for level in range(m):
        def increment(coords, lvl=level):
            out = list(coords)
            out[lvl] = (out[lvl] + 1) % p
            return tuple(out)

        gens.append(tuple(_tuple_index(increment(t), p, m) for t in points))
        if level > 0:
            def zero_prefix_increment(coords, lvl=level):
                out = list(coords)
                if all(c == 0 for c in coords[:lvl]):
                    out[lvl] = (out[lvl] + 1) % p
                return tuple(out)

            gens.append(tuple(_tuple_index(zero_prefix_increment(t), p, m) for t in points))
    group = PermutationGroup(n, gens)
    expected = p ** ((n - 1) // (p - 1))
    if group.order != expected:
        raise InvariantError(
            f"closure order {group.order} != {expected} for p={p}, m={m}"
        )
    return group


class SylowFixedPoint:
    """A fixed point of the p^m group, given by its tuple of difference sets."""

    __slots__ = ("p", "m", "sets")

    def __init__(self, p: int, m: int, sets):
        self.p = p
        self.m = m
        self.sets = tuple(frozenset(s) for s in sets)
        if len(self.sets) != m:
            raise PreconditionError("need one difference set per level")
        half = set(positive_half(p))
        for s in self.sets:
            if not s <= half:
                raise PreconditionError("difference set outside the positive half")

    def graph(self) -> Graph:
        return lexicographic_product([difference_graph(self.p, s) for s in self.sets])

    @property
    def level(self) -> int:
        return sum(len(s) for s in self.sets)

    @property
    def empty_prefix(self) -> int:
        for i, s in enumerate(self.sets):
            if s:
                return i
        return self.m

    def key(self) -> tuple:
        return tuple(tuple(sorted(s)) for s in self.sets)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SylowFixedPoint)
            and (self.p, self.m, self.sets) == (other.p, other.m, other.sets)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.sets))

    def __repr__(self) -> str:
        return f"SylowFixedPoint(p={self.p}, m={self.m}, sets={self.key()})"


def sylow_lattice(p: int, m: int) -> list[SylowFixedPoint]:
    """All difference-set tuples, realized as lexicographic products of
    difference graphs; asserted to coincide with the orbit-union fixed points
    of the generated group in the complete host."""
    n = p ** m
    if n > HOST_SIZE_CAP:
        raise PreconditionError(f"lattice construction capped at p^m <= {HOST_SIZE_CAP}")
    half = positive_half(p)
    subsets = []
    for bits in range(1 << len(half)):
        subsets.append(frozenset(half[i] for i in range(len(half)) if bits >> i & 1))
    subsets.sort(key=lambda s: tuple(sorted(s)))
    points = [
        SylowFixedPoint(p, m, combo) for combo in iproduct(subsets, repeat=m)
    ]
    lattice = orbit_partition(sylow_generators(p, m), complete_graph(n))
    realized = {pt.graph().mask for pt in points}
    from_orbits = {g.mask for _, g in lattice.fixed_points()}
    if realized != from_orbits:
        raise InvariantError("difference-graph products disagree with orbit fixed points")
    return points


def sylow_point_level(point: SylowFixedPoint) -> int:
    return point.level


def empty_prefix(point: SylowFixedPoint) -> int:
    return point.empty_prefix


def prefix_shift_embedding(
    point: SylowFixedPoint, target: SylowFixedPoint | None = None
) -> tuple[int, ...]:
    """Explicit injection of a fixed point with j leading empty sets into the
    point whose tuple starts with the nonempty suffix (trailing sets free):
    the left rotation (a_1..a_m) -> (a_2..a_m, a_1), iterated j times, maps
    edges onto edges of the target.  Returns the vertex map and verifies it."""
    j = point.empty_prefix
    if j == 0:
        raise PreconditionError("point has no leading empty sets")
    p, m = point.p, point.m
    suffix = point.sets[j:]
    if target is None:
        target = SylowFixedPoint(p, m, suffix + (frozenset(),) * j)
    if target.sets[: m - j] != tuple(suffix):
        raise PreconditionError("target must start with the nonempty suffix")
    n = p ** m
    vmap = []
    for idx in range(n):
        coords = _index_tuple(idx, p, m)
        rotated = coords[j:] + coords[:j]
        vmap.append(_tuple_index(rotated, p, m))
    src = point.graph()
    dst = target.graph()
    for u, v in src.edges():
        if not dst.has_edge(vmap[u], vmap[v]):
            raise InvariantError("rotation image is not an edge-subgraph of the target")
    return tuple(vmap)


# ---------------------------------------------------------------------------
# Product groups over inhabited hosts
# ---------------------------------------------------------------------------

def product_lattice(factors) -> FixedPointLattice:
    """Fixed points of the product group in the join of the factor hosts.

    Each factor is (host, lattice) with a transitive group; the result's
    points are exactly the block graphs with complete connections along any
    pattern on the factor blocks."""
    factors = list(factors)
    if not factors:
        raise PreconditionError("empty factor list")
    for host, lat in factors:
        if lat.host != host:
            raise PreconditionError("factor lattice host mismatch")
        if not lat.group.is_transitive():
            raise PreconditionError("factor group must be transitive")
    offsets = []
    off = 0
    for host, _ in factors:
        offsets.append(off)
        off += host.n
    n = off
    gens = []
    for i, (host, lat) in enumerate(factors):
        for g in lat.group.generators:
            full = list(range(n))
            for x in range(host.n):
                full[offsets[i] + x] = offsets[i] + g[x]
            gens.append(tuple(full))
    if not gens:
        gens = [tuple(range(n))]
    group = PermutationGroup(n, gens)
    from .graphs import join

    host_join = join(*(h for h, _ in factors))
    lattice = orbit_partition(group, host_join)
    expected_orbits = sum(len(lat.orbit_masks) for _, lat in factors) + (
        len(factors) * (len(factors) - 1) // 2
    )
    if len(lattice.orbit_masks) != expected_orbits:
        raise InvariantError("product lattice orbit count mismatch")
    return lattice


# ---------------------------------------------------------------------------
# Nonvanishing-point search
# ---------------------------------------------------------------------------

def find_nonvanishing_fixed_point(
    phi: GraphParameter, p: int, t: int
) -> SylowFixedPoint | None:
    """Search the p^t lattice for a zero-prefix point whose alternating
    enumerator does not vanish mod p: take the smallest level where some point
    drops below the empty graph's value, restricted to zero-prefix points,
    ties broken lexicographically on the set tuples.  Returns None when the
    parameter is constant on p^t vertices."""
    from .enumerator import check_nonvanishing_criterion

    n = p ** t
    if n > HOST_SIZE_CAP:
        raise PreconditionError(f"search capped at p^t <= {HOST_SIZE_CAP}")
    if phi.codomain_bound is not None and phi.codomain_bound(n) >= p:
        raise PreconditionError("codomain bound must stay below p")
    points = sylow_lattice(p, t)
    z = evaluate(phi, independent_set(n))
    by_level: dict[int, list[SylowFixedPoint]] = {}
    for pt in points:
        by_level.setdefault(pt.level, []).append(pt)
    drop_level = None
    for lvl in sorted(by_level):
        if any(evaluate(phi, pt.graph()) < z for pt in by_level[lvl]):
            drop_level = lvl
            break
    if drop_level is None:
        return None
    candidates = [
        pt
        for pt in sorted(by_level[drop_level], key=lambda q: q.key())
        if pt.empty_prefix == 0 and evaluate(phi, pt.graph()) < z
    ]
    if not candidates:
        raise InvariantError("no zero-prefix point at the first dropping level")
    found = candidates[0]
    lattice = orbit_partition(sylow_generators(p, t), complete_graph(n))
    subset = lattice.subset_of_graph(found.graph())
    if not check_nonvanishing_criterion(lattice, subset, phi, p):
        raise InvariantError("selected point fails the nonvanishing certificate")
    side = p ** (t - 1)
    if not contains_biclique(found.graph(), side, side):
        raise InvariantError("selected point misses the guaranteed biclique")
    return found
