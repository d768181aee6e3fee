"""The generic 2-dimensional direction-length rigidity matroid M(G).

Rank queries are answered by a randomized algebraic oracle: the rigidity
matrix is evaluated at coordinates drawn uniformly from GF(2**61 - 1) and
its rank computed by elimination.  Several independent trials are taken
and the maximum rank reported, so a query underestimates the generic rank
with probability well below 2**-50 at desk scale.  All draws are derived
from an explicit seed, making every answer reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph_core import DIR, LEN, Edge, MixedGraph, PreconditionError
from .linalg import PRIME, EchelonModP
from .seeds import make_rng


def _rigidity_row(edge: Edge, coords, col, ncols, p=PRIME):
    """Row of the rigidity matrix for one edge, over GF(p).

    For a length edge uv with (a, b) = p(u) - p(v) the row carries (a, b)
    at u and (-a, -b) at v; a direction edge carries (b, -a) at u and
    (-b, a) at v.  Orientation: u is the smaller endpoint.
    """
    u, v, kind = edge
    ux, uy = coords[u]
    vx, vy = coords[v]
    a = (ux - vx) % p
    b = (uy - vy) % p
    row = [0] * ncols
    cu, cv = col[u], col[v]
    if kind == LEN:
        row[cu], row[cu + 1] = a, b
        row[cv], row[cv + 1] = (-a) % p, (-b) % p
    else:
        row[cu], row[cu + 1] = b, (-a) % p
        row[cv], row[cv + 1] = (-b) % p, a
    return row


class RankOracle:
    """Memoized randomized rank queries for subsets of the edge set."""

    def __init__(self, graph: MixedGraph, seed: int = 0, trials: int = 3):
        self.graph = graph
        self.seed = seed
        self.trials = max(1, int(trials))
        verts = graph.sorted_vertices()
        self.col = {v: 2 * i for i, v in enumerate(verts)}
        self.ncols = 2 * len(verts)
        self.edges = graph.edges()
        self._rows: list[dict[Edge, list[int]]] = []
        for t in range(self.trials):
            rng = make_rng(seed, "rigidity-rank", t)
            coords = {v: (rng.randrange(PRIME), rng.randrange(PRIME)) for v in verts}
            self._rows.append(
                {e: _rigidity_row(e, coords, self.col, self.ncols) for e in self.edges}
            )
        self._cache: dict[frozenset[Edge], int] = {}

    def rank(self, subset=None) -> int:
        edges = self.edges if subset is None else tuple(sorted(subset))
        key = frozenset(edges)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        best = 0
        for rows in self._rows:
            ech = EchelonModP(self.ncols)
            for e in edges:
                ech.add(rows[e])
            best = max(best, ech.rank)
        self._cache[key] = best
        return best

    def greedy_basis(self, pool=None) -> tuple[Edge, ...]:
        """Maximal independent subset of ``pool``, scanned in canonical order.

        One greedy pass per trial; the pass achieving the largest basis wins
        (ties resolved in trial order), so the result is seed-deterministic.
        """
        pool = self.edges if pool is None else tuple(sorted(pool))
        best: tuple[Edge, ...] = ()
        for rows in self._rows:
            ech = EchelonModP(self.ncols)
            picked = [e for e in pool if ech.add(rows[e])]
            if len(picked) > len(best):
                best = tuple(picked)
        return best


@dataclass(frozen=True)
class MatroidView:
    """Cached rank structure of M(G): a basis, its fundamental circuits and
    the partition of the edge set into M-components."""

    graph: MixedGraph
    rank: int
    basis: tuple[Edge, ...]
    fundamental_circuits: dict[Edge, frozenset[Edge]]
    components: tuple[frozenset[Edge], ...]
    oracle: RankOracle = field(repr=False)


def build_matroid_view(graph: MixedGraph, seed: int = 0, trials: int = 3) -> MatroidView:
    oracle = RankOracle(graph, seed, trials)
    basis = oracle.greedy_basis()
    rank = len(basis)
    basis_set = frozenset(basis)
    circuits: dict[Edge, frozenset[Edge]] = {}
    for e in oracle.edges:
        if e not in basis_set:
            circuits[e] = _circuit_in(oracle, basis, e)
    components = _components_from_circuits(oracle.edges, circuits.values())
    return MatroidView(graph, rank, basis, circuits, components, oracle)


def _circuit_in(oracle: RankOracle, basis, extra: Edge) -> frozenset[Edge]:
    """The unique circuit inside basis + extra, by greedy removal."""
    base = list(basis)
    size = len(base)
    members = [extra]
    for f in base:
        trial = [g for g in base if g != f] + [extra]
        if oracle.rank(trial) == size:
            members.append(f)
    return frozenset(members)


def _components_from_circuits(edges, circuits) -> tuple[frozenset[Edge], ...]:
    parent = {e: e for e in edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for circ in circuits:
        it = iter(sorted(circ))
        first = find(next(it))
        for e in it:
            r = find(e)
            if r != first:
                parent[r] = first
    groups: dict[Edge, set[Edge]] = {}
    for e in edges:
        groups.setdefault(find(e), set()).add(e)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=sorted))


# -- flat operations ----------------------------------------------------


def generic_rank(graph: MixedGraph, subset=None, *, seed: int = 0, trials: int = 3) -> int:
    """Rank of ``subset`` (default: all edges) in M(G)."""
    return RankOracle(graph, seed, trials).rank(subset)


def is_independent(graph: MixedGraph, subset, *, seed: int = 0, trials: int = 3) -> bool:
    subset = tuple(subset)
    return generic_rank(graph, subset, seed=seed, trials=trials) == len(subset)


def is_rigid(graph: MixedGraph, *, seed: int = 0, trials: int = 3) -> bool:
    """True iff the rigidity matroid has full rank 2|V| - 2.

    Graphs with at most one vertex are rigid (rank 0 = 2*1 - 2).
    """
    if graph.n <= 1:
        return True
    return generic_rank(graph, seed=seed, trials=trials) == 2 * graph.n - 2


def is_redundantly_rigid(
    graph: MixedGraph, *, seed: int = 0, trials: int = 3
) -> tuple[bool, Edge | None]:
    """Rigid, and still rigid after deleting any single edge.

    Returns (verdict, witness): the witness is an edge whose removal breaks
    rigidity, or None (in particular when the graph is not rigid at all).
    """
    oracle = RankOracle(graph, seed, trials)
    target = 2 * graph.n - 2
    if graph.n > 1 and oracle.rank() != target:
        return False, None
    all_edges = oracle.edges
    for e in all_edges:
        rest = [f for f in all_edges if f != e]
        if graph.n > 1 and oracle.rank(rest) != target:
            return False, e
    return True, None


def fundamental_circuit(
    graph: MixedGraph, basis, edge: Edge, *, seed: int = 0, trials: int = 3
) -> frozenset[Edge]:
    """The unique circuit inside ``basis + edge`` of M(G)."""
    oracle = RankOracle(graph, seed, trials)
    basis = tuple(sorted(basis))
    if edge in basis:
        raise PreconditionError(f"edge {edge!r} already belongs to the basis")
    if oracle.rank(basis) != len(basis) or len(basis) != oracle.rank():
        raise PreconditionError("the given edge set is not a basis of M(G)")
    return _circuit_in(oracle, basis, edge)


def m_components(graph: MixedGraph, *, seed: int = 0, trials: int = 3) -> tuple[frozenset[Edge], ...]:
    """Partition of the edge set into M-components (singletons for edges in
    no circuit)."""
    return build_matroid_view(graph, seed, trials).components


def is_m_connected(graph: MixedGraph, *, seed: int = 0, trials: int = 3) -> bool:
    """True iff M(G) has a single connected component.

    Graphs with at most one edge are M-connected by convention.
    """
    if graph.edge_count <= 1:
        return True
    return len(m_components(graph, seed=seed, trials=trials)) == 1


def direction_independent(
    graph: MixedGraph, *, seed: int = 0, trials: int = 3
) -> tuple[bool, frozenset[Edge] | None]:
    """Is D independent in M(G)?  If not, also return a direction-pure circuit."""
    oracle = RankOracle(graph, seed, trials)
    dirs = tuple(e for e in oracle.edges if e[2] == DIR)
    basis = oracle.greedy_basis(dirs)
    if len(basis) == len(dirs):
        return True, None
    extra = next(e for e in dirs if e not in set(basis))
    return False, _circuit_in(oracle, basis, extra)


def max_direction_independent(graph: MixedGraph, *, seed: int = 0, trials: int = 3) -> frozenset:
    """A maximal subset of D independent in M(G), as a set of vertex pairs."""
    oracle = RankOracle(graph, seed, trials)
    dirs = tuple(e for e in oracle.edges if e[2] == DIR)
    return frozenset((u, v) for u, v, _ in oracle.greedy_basis(dirs))
