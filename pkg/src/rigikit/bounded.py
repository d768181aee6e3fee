"""Boundedness of mixed graphs and the bounded-component decomposition.

A mixed graph is bounded when every equivalent realization keeps all
pairwise distances below a common constant.  Two equivalent tests are
implemented: contract the length edges of a direction-independent
restriction and ask for two edge-disjoint spanning trees, or augment every
length edge with a parallel direction edge and ask for rigidity.  The
packing route is primary; in debug builds both run and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph_core import DIR, MixedGraph, Multigraph, contract_length_edges
from .linalg import PRIME, EchelonModP
from .matroid import is_rigid, max_direction_independent
from .packing import spanning_tree_packing
from .seeds import make_rng


@dataclass(frozen=True)
class BoundedDecomposition:
    """Maximal-bounded-subgraph partition of the vertex set."""

    blocks: tuple[tuple[str, ...], ...]

    @property
    def nontrivial_blocks(self) -> tuple[tuple[str, ...], ...]:
        return tuple(b for b in self.blocks if len(b) >= 2)

    def to_json_dict(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}


def augment(graph: MixedGraph) -> MixedGraph:
    """Add a direction edge parallel to each length edge.

    Pairs that already carry a direction edge are left alone; the extra row
    would be dependent anyway.
    """
    return graph.with_dir_edges(graph.len_edges)


def is_bounded_by_packing(graph: MixedGraph, seed: int = 0) -> bool:
    """Packing route: restrict D to a maximal independent subset, contract
    all length edges, and ask for two edge-disjoint spanning trees."""
    restricted = graph.restrict_dir_edges(max_direction_independent(graph, seed=seed))
    contracted = contract_length_edges(restricted)
    return spanning_tree_packing(contracted).has_two_trees


def is_bounded_by_augmentation(graph: MixedGraph, seed: int = 0) -> bool:
    """Augmentation route: bounded iff the augmented graph is rigid."""
    return is_rigid(augment(graph), seed=seed)


def is_bounded(graph: MixedGraph, seed: int = 0) -> bool:
    verdict = is_bounded_by_packing(graph, seed)
    if __debug__:
        other = is_bounded_by_augmentation(graph, seed)
        assert verdict == other, (
            f"boundedness routes disagree on {graph.to_json()}: "
            f"packing={verdict} augmentation={other}"
        )
    return verdict


def _frame_echelon(multigraph: Multigraph, seed: int) -> tuple[EchelonModP, dict[str, int]]:
    """Echelon of the frame matrix of the multigraph with random GF(p) entries."""
    verts = tuple(sorted(multigraph.vertices))
    col = {v: 2 * i for i, v in enumerate(verts)}
    ncols = 2 * len(verts)
    rng = make_rng(seed, "frame-rank")
    ech = EchelonModP(ncols)
    for u, v, _ in multigraph.edges:
        qx, qy = rng.randrange(1, PRIME), rng.randrange(1, PRIME)
        row = [0] * ncols
        row[col[u]], row[col[u] + 1] = qx, qy
        row[col[v]], row[col[v] + 1] = (-qx) % PRIME, (-qy) % PRIME
        ech.add(row)
    return ech, col


def _linked(ech: EchelonModP, col: dict[str, int], u: str, v: str) -> bool:
    """Would two fresh parallel u-v edges leave the frame rank unchanged?

    Fresh rows span the 2-dimensional space of all u-v frame rows, so the
    rank stays put exactly when both unit-vector rows already lie in the
    row space.
    """
    for unit in (0, 1):
        row = [0] * ech.ncols
        row[col[u] + unit] = 1
        row[col[v] + unit] = PRIME - 1
        if ech.residual(row) is not None:
            return False
    return True


def bounded_components(graph: MixedGraph, seed: int = 0) -> BoundedDecomposition:
    """Partition of V into vertex sets of the maximal bounded subgraphs.

    Length-edge components are collapsed first (every length edge is
    bounded on its own), then vertices of the contraction are merged when
    doubling the connection between them cannot raise the generic frame
    rank; the closure of that relation over adjacent pairs gives the
    blocks.
    """
    restricted = graph.restrict_dir_edges(max_direction_independent(graph, seed=seed))
    contracted = contract_length_edges(restricted)
    ech, col = _frame_echelon(contracted, seed)

    parent = {v: v for v in contracted.vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen_pairs = set()
    for u, v, _ in contracted.edges:
        if (u, v) in seen_pairs:
            continue
        seen_pairs.add((u, v))
        if find(u) != find(v) and _linked(ech, col, u, v):
            parent[find(v)] = find(u)

    groups: dict[str, set[str]] = {}
    for v in contracted.vertices:
        groups.setdefault(find(v), set()).add(v)

    phi = contracted.vertex_map_dict()
    blocks = []
    for group in groups.values():
        blocks.append(tuple(sorted(v for v in graph.vertices if phi[v] in group)))
    return BoundedDecomposition(tuple(sorted(blocks)))
