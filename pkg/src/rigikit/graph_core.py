"""Mixed direction-length graphs: data model, JSON format, contraction,
2-connectivity and the direction-balanced predicate.

A mixed graph carries two edge sets over the same vertex set: direction
edges and length edges.  A pair of vertices may carry at most one edge of
each type, loops are forbidden, and vertex identifiers are opaque strings.
All iteration orders used by algorithms are lexicographic, so every
operation in the package is deterministic.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

DIR = "dir"
LEN = "len"
KINDS = (DIR, LEN)

Pair = tuple[str, str]
Edge = tuple[str, str, str]  # (u, v, kind) with u < v


class GraphError(ValueError):
    """Malformed graph document or invalid graph operation."""


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


def norm_pair(u: str, v: str) -> Pair:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, eq=False)
class MixedGraph:
    """Immutable mixed graph G = (V; D, L).

    ``vertices`` preserves the order it was constructed with (useful for
    display); every algorithm iterates vertices and edges in sorted order.
    Equality ignores vertex order.
    """

    vertices: tuple[str, ...]
    dir_edges: frozenset[Pair]
    len_edges: frozenset[Pair]

    @classmethod
    def build(cls, vertices, dir_edges=(), len_edges=()) -> "MixedGraph":
        verts = tuple(dict.fromkeys(str(v) for v in vertices))
        vset = set(verts)
        d = frozenset(norm_pair(str(u), str(v)) for u, v in dir_edges)
        l = frozenset(norm_pair(str(u), str(v)) for u, v in len_edges)
        for u, v in d | l:
            if u == v:
                raise GraphError(f"loop edge at vertex {u!r}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge ({u!r}, {v!r}) uses an undeclared vertex")
        return cls(verts, d, l)

    # -- basic views -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return (
            frozenset(self.vertices) == frozenset(other.vertices)
            and self.dir_edges == other.dir_edges
            and self.len_edges == other.len_edges
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.dir_edges, self.len_edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def sorted_vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self.vertices))

    def edges(self) -> tuple[Edge, ...]:
        """All edges in canonical order: (min endpoint, max endpoint, kind)."""
        out = [(u, v, DIR) for u, v in self.dir_edges]
        out += [(u, v, LEN) for u, v in self.len_edges]
        return tuple(sorted(out))

    @property
    def edge_count(self) -> int:
        return len(self.dir_edges) + len(self.len_edges)

    def pairs(self) -> frozenset[Pair]:
        """Vertex pairs joined by at least one edge of either type."""
        return self.dir_edges | self.len_edges

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in sorted(self.pairs()):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    # -- surgery ---------------------------------------------------------

    def subgraph(self, keep) -> "MixedGraph":
        """Induced subgraph on the vertex set ``keep``."""
        ks = set(keep)
        unknown = ks - set(self.vertices)
        if unknown:
            raise GraphError(f"subgraph on undeclared vertices {sorted(unknown)!r}")
        verts = tuple(v for v in self.vertices if v in ks)
        d = frozenset(e for e in self.dir_edges if e[0] in ks and e[1] in ks)
        l = frozenset(e for e in self.len_edges if e[0] in ks and e[1] in ks)
        return MixedGraph(verts, d, l)

    def delete_edge(self, edge: Edge) -> "MixedGraph":
        u, v, kind = edge
        pair = norm_pair(u, v)
        if kind == DIR:
            if pair not in self.dir_edges:
                raise GraphError(f"no direction edge {pair!r}")
            return MixedGraph(self.vertices, self.dir_edges - {pair}, self.len_edges)
        if kind == LEN:
            if pair not in self.len_edges:
                raise GraphError(f"no length edge {pair!r}")
            return MixedGraph(self.vertices, self.dir_edges, self.len_edges - {pair})
        raise GraphError(f"unknown edge kind {kind!r}")

    def with_dir_edges(self, pairs) -> "MixedGraph":
        extra = frozenset(norm_pair(u, v) for u, v in pairs)
        for u, v in extra:
            if u == v:
                raise GraphError(f"loop edge at vertex {u!r}")
        return MixedGraph(self.vertices, self.dir_edges | extra, self.len_edges)

    def restrict_dir_edges(self, pairs) -> "MixedGraph":
        keep = frozenset(norm_pair(u, v) for u, v in pairs)
        if not keep <= self.dir_edges:
            raise GraphError("restriction is not a subset of the direction edges")
        return MixedGraph(self.vertices, keep, self.len_edges)

    def relabel(self, mapping: dict[str, str]) -> "MixedGraph":
        verts = tuple(mapping[v] for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("relabeling is not injective")
        d = frozenset(norm_pair(mapping[u], mapping[v]) for u, v in self.dir_edges)
        l = frozenset(norm_pair(mapping[u], mapping[v]) for u, v in self.len_edges)
        return MixedGraph(verts, d, l)

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        edges = [{"u": u, "v": v, "kind": kind} for u, v, kind in self.edges()]
        return {"vertices": sorted(self.vertices), "edges": edges}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    def hash_id(self) -> str:
        """Short stable identifier of the canonical serialization."""
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:12]


@dataclass(frozen=True)
class Multigraph:
    """Loop-free multigraph; parallel edges are kept and identified by index.

    ``edges`` entries are (u, v, kind) with u <= v; ``kind`` records the
    type annotation of the originating mixed edge.  ``vertex_map`` carries
    the contraction map (original vertex -> image) when the multigraph was
    produced by a contraction, else the identity.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    vertex_map: tuple[tuple[str, str], ...] = ()

    @classmethod
    def build(cls, vertices, pairs, kinds=None) -> "Multigraph":
        verts = tuple(dict.fromkeys(str(v) for v in vertices))
        vset = set(verts)
        out = []
        for i, (u, v) in enumerate(pairs):
            u, v = str(u), str(v)
            if u == v:
                continue  # loops contribute nothing to trees or rank
            if u not in vset or v not in vset:
                raise GraphError(f"edge ({u!r}, {v!r}) uses an undeclared vertex")
            kind = kinds[i] if kinds else DIR
            out.append((*norm_pair(u, v), kind))
        vmap = tuple((v, v) for v in verts)
        return cls(verts, tuple(sorted(out)), vmap)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_map_dict(self) -> dict[str, str]:
        return dict(self.vertex_map)


@dataclass(frozen=True)
class Separation:
    """A 2-separation: a cut pair and the components it leaves behind."""

    cut_pair: Pair
    sides: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class TwoConnectivity:
    ok: bool
    cut_vertex: str | None = None
    component: tuple[str, ...] | None = None


@dataclass(frozen=True)
class BalanceReport:
    ok: bool
    separation: Separation | None = None
    deficient_side: tuple[str, ...] | None = None


# -- parsing ------------------------------------------------------------


def parse_graph(text: str) -> MixedGraph:
    """Parse the graph JSON interchange format.

    Schema: ``{"vertices": [str, ...],
    "edges": [{"u": str, "v": str, "kind": "dir"|"len"}, ...]}``.
    Errors carry the offending location.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphError("top level must be an object")
    if "vertices" not in doc or "edges" not in doc:
        raise GraphError('top level must have "vertices" and "edges"')
    verts = doc["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise GraphError('"vertices" must be a list of strings')
    if len(set(verts)) != len(verts):
        raise GraphError('"vertices" contains duplicates')
    vset = set(verts)
    dir_edges: set[Pair] = set()
    len_edges: set[Pair] = set()
    if not isinstance(doc["edges"], list):
        raise GraphError('"edges" must be a list')
    for i, item in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(item, dict):
            raise GraphError(f"{where}: must be an object")
        try:
            u, v, kind = item["u"], item["v"], item["kind"]
        except KeyError as exc:
            raise GraphError(f"{where}: missing field {exc.args[0]!r}") from exc
        if not isinstance(u, str) or not isinstance(v, str):
            raise GraphError(f"{where}: endpoints must be strings")
        if kind not in KINDS:
            raise GraphError(f'{where}: kind must be "dir" or "len", got {kind!r}')
        if u == v:
            raise GraphError(f"{where}: loop edge at vertex {u!r}")
        if u not in vset or v not in vset:
            raise GraphError(f"{where}: endpoint not in vertex list")
        pair = norm_pair(u, v)
        bucket = dir_edges if kind == DIR else len_edges
        if pair in bucket:
            raise GraphError(f"{where}: parallel {'direction' if kind == DIR else 'length'} edges on {pair!r}")
        bucket.add(pair)
    return MixedGraph(tuple(verts), frozenset(dir_edges), frozenset(len_edges))


def serialize_graph(graph: MixedGraph) -> str:
    return graph.to_json()


# -- contraction --------------------------------------------------------


def contract_subgraph(graph: MixedGraph, merge) -> Multigraph:
    """Contract the induced subgraph on ``merge`` to a single vertex.

    Edges inside ``merge`` disappear, all other edges are kept (parallel
    edges allowed, loops dropped).  The contracted blob is named after the
    lexicographically smallest vertex of ``merge``.
    """
    mset = set(merge)
    if not mset:
        raise GraphError("cannot contract an empty vertex set")
    if not mset <= set(graph.vertices):
        raise GraphError("contraction set is not a subset of the vertices")
    blob = min(mset)
    phi = {v: (blob if v in mset else v) for v in graph.vertices}
    return _contracted(graph, phi)


def contract_length_edges(graph: MixedGraph) -> Multigraph:
    """Contract every length edge: each component of (V, L) becomes one vertex.

    Direction edges survive with endpoints remapped; loops are dropped and
    parallel copies are kept.
    """
    parent = {v: v for v in graph.vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in sorted(graph.len_edges):
        ru, rv = find(u), find(v)
        if ru != rv:
            # keep the smaller name as the class representative
            if rv < ru:
                ru, rv = rv, ru
            parent[rv] = ru
    phi = {v: find(v) for v in graph.vertices}
    return _contracted(graph, phi, kinds_from=(DIR,))


def _contracted(graph: MixedGraph, phi: dict[str, str], kinds_from=KINDS) -> Multigraph:
    verts = tuple(sorted(set(phi.values())))
    edges = []
    for kind, pool in ((DIR, graph.dir_edges), (LEN, graph.len_edges)):
        if kind not in kinds_from:
            continue
        for u, v in sorted(pool):
            a, b = phi[u], phi[v]
            if a != b:
                edges.append((*norm_pair(a, b), kind))
    vmap = tuple(sorted(phi.items()))
    return Multigraph(verts, tuple(sorted(edges)), vmap)


# -- connectivity -------------------------------------------------------


def _components(vertices, adj, removed=()) -> list[tuple[str, ...]]:
    removed = set(removed)
    seen = set(removed)
    comps = []
    for start in sorted(vertices):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


def is_2connected(graph: MixedGraph) -> TwoConnectivity:
    """Check 2-connectivity of the underlying simple graph (types ignored).

    Graphs with at most one vertex count as 2-connected.  On failure the
    certificate is a cut vertex, or one component of a disconnected graph.
    """
    if graph.n <= 1:
        return TwoConnectivity(True)
    adj = graph.adjacency()
    comps = _components(graph.vertices, adj)
    if len(comps) > 1:
        return TwoConnectivity(False, component=comps[0])
    if graph.n == 2:
        return TwoConnectivity(True)
    for v in sorted(graph.vertices):
        rest = _components(graph.vertices, adj, removed=(v,))
        if len(rest) > 1:
            return TwoConnectivity(False, cut_vertex=v)
    return TwoConnectivity(True)


def _side_has_direction_edge(graph: MixedGraph, side, u: str, v: str) -> bool:
    allowed = set(side) | {u, v}
    cut = norm_pair(u, v)
    for a, b in graph.dir_edges:
        if (a, b) != cut and a in allowed and b in allowed:
            return True
    return False


def is_direction_balanced(graph: MixedGraph) -> BalanceReport:
    """Check that every 2-separation has a direction edge on each side.

    A side of the separation at {u, v} is a component of G - {u, v}; the
    edges between u and v themselves do not count.  Graphs without any
    2-separation are balanced vacuously.
    """
    if graph.n < 4:
        return BalanceReport(True)
    adj = graph.adjacency()
    verts = sorted(graph.vertices)
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            comps = _components(graph.vertices, adj, removed=(u, v))
            if len(comps) < 2:
                continue
            sep = Separation(norm_pair(u, v), tuple(comps))
            for side in comps:
                if not _side_has_direction_edge(graph, side, u, v):
                    return BalanceReport(False, separation=sep, deficient_side=side)
    return BalanceReport(True)
