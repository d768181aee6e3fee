"""Two edge-disjoint spanning trees in a multigraph, with certificates.

The packing is computed by matroid union of two copies of the cycle
matroid: edges are inserted one at a time, and an insertion that cannot be
placed directly triggers a breadth-first search over exchange moves
("displace an edge from its forest").  When the search fails, the visited
edges certify a Nash-Williams violator: a vertex set X inducing at least
2|X| - 1 edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph_core import Multigraph

UNION = "UNION"
CONTAINS = "CONTAINS"
NEITHER = "NEITHER"


@dataclass(frozen=True)
class PackingViolation:
    kind: str  # "disconnected" | "deficit" | "dense_set"
    vertices: tuple[str, ...] | None = None
    edge_count: int | None = None
    needed: int | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.vertices is not None:
            out["vertices"] = list(self.vertices)
        if self.edge_count is not None:
            out["edge_count"] = self.edge_count
        if self.needed is not None:
            out["needed"] = self.needed
        return out


@dataclass(frozen=True)
class PackingResult:
    """verdict UNION: the edge set is exactly two edge-disjoint spanning
    trees; CONTAINS: two such trees exist plus extra edges; NEITHER: no two
    edge-disjoint spanning trees exist (with a certificate)."""

    verdict: str
    trees: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    violator: PackingViolation | None = None

    @property
    def has_two_trees(self) -> bool:
        return self.verdict in (UNION, CONTAINS)

    def to_json_dict(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.trees is not None:
            out["trees"] = [list(t) for t in self.trees]
        if self.violator is not None:
            out["violator"] = self.violator.to_json_dict()
        return out


class _ForestPair:
    """Two edge-disjoint forests over a fixed vertex set.

    Edges are referred to by index; ``owner`` maps a placed edge to its
    forest (0 or 1).
    """

    def __init__(self, vertices, endpoints):
        self.endpoints = endpoints
        self.adj = [{v: [] for v in vertices}, {v: [] for v in vertices}]
        self.owner: dict[int, int] = {}

    def path(self, side: int, a: str, b: str):
        """Edge-index path from a to b inside forest ``side`` (None if apart)."""
        if a == b:
            return []
        adj = self.adj[side]
        prev: dict[str, tuple[str, int]] = {a: (a, -1)}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y, idx in adj[x]:
                if y in prev:
                    continue
                prev[y] = (x, idx)
                if y == b:
                    out = []
                    cur = b
                    while cur != a:
                        cur, pidx = prev[cur]
                        out.append(pidx)
                    return out
                queue.append(y)
        return None

    def insert(self, side: int, idx: int):
        u, v = self.endpoints[idx]
        self.adj[side][u].append((v, idx))
        self.adj[side][v].append((u, idx))
        self.owner[idx] = side

    def remove(self, idx: int):
        side = self.owner.pop(idx)
        u, v = self.endpoints[idx]
        self.adj[side][u].remove((v, idx))
        self.adj[side][v].remove((u, idx))

    def try_augment(self, start: int):
        """Place the unassigned edge ``start`` via a shortest exchange chain.

        Returns (True, None) on success, else (False, visited) where
        ``visited`` is the set of edge indices reached by the search.
        """
        parent: dict[int, tuple[int, int]] = {}
        visited = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            u, v = self.endpoints[x]
            for side in (0, 1):
                path = self.path(side, u, v)
                if path is None:
                    self._apply(parent, start, x, side)
                    return True, None
                for f in path:
                    if f not in visited:
                        visited.add(f)
                        parent[f] = (x, side)
                        queue.append(f)
        return False, visited

    def _apply(self, parent, start: int, last: int, side: int):
        # parent[f] = (pred, s) means: f currently sits in forest s, and
        # pred's fundamental cycle in s passes through f, so evicting f
        # lets pred enter s.  ``last`` goes to ``side``, each ancestor to
        # the forest its child vacated.
        moves = []
        cur, to = last, side
        while True:
            moves.append((cur, to))
            if cur == start:
                break
            cur, to = parent[cur]
        for edge, _ in moves:
            if edge != start:
                self.remove(edge)
        for edge, to in moves:
            self.insert(to, edge)

    def tree_edges(self, side: int) -> tuple[int, ...]:
        return tuple(sorted(i for i, s in self.owner.items() if s == side))

    def forest_is_acyclic(self, side: int) -> bool:
        seen: set[str] = set()
        adj = self.adj[side]
        for root in adj:
            if root in seen:
                continue
            stack = [(root, -1)]
            seen.add(root)
            while stack:
                x, via = stack.pop()
                for y, idx in adj[x]:
                    if idx == via:
                        continue
                    if y in seen:
                        return False
                    seen.add(y)
                    stack.append((y, idx))
        return True


def _vertex_components(vertices, endpoints):
    adj = {v: [] for v in vertices}
    for u, v in endpoints:
        adj[u].append(v)
        adj[v].append(u)
    comps = []
    seen: set[str] = set()
    for start in sorted(vertices):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


def _dense_set_from_failure(endpoints, visited, start: int) -> tuple[str, ...]:
    """Vertex set of the visited-edge component containing ``start``.

    After a failed augmentation both forests restrict to spanning trees of
    this set X while the start edge is extra, so X induces >= 2|X| - 1
    edges of the multigraph.
    """
    adj: dict[str, list[str]] = {}
    for idx in visited:
        u, v = endpoints[idx]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    root = endpoints[start][0]
    seen = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return tuple(sorted(seen))


def spanning_tree_packing(multigraph: Multigraph) -> PackingResult:
    """Decide whether the multigraph packs two edge-disjoint spanning trees.

    Parallel edges are distinct elements (identified by their index into
    ``multigraph.edges``).  Certificates: found trees are returned as index
    tuples; otherwise a disconnection witness, an edge-count deficit, or a
    dense vertex set X with i(X) >= 2|X| - 1.
    """
    n = multigraph.n
    endpoints = [(u, v) for u, v, _ in multigraph.edges]
    m = len(endpoints)
    if n == 0:
        return PackingResult(UNION, trees=((), ()))
    target = 2 * n - 2
    comps = _vertex_components(multigraph.vertices, endpoints)
    if len(comps) > 1:
        return PackingResult(
            NEITHER, violator=PackingViolation("disconnected", vertices=comps[0])
        )
    forests = _ForestPair(multigraph.vertices, endpoints)
    placed = 0
    for idx in range(m):
        if placed == target:
            break
        ok, _ = forests.try_augment(idx)
        if ok:
            placed += 1
            assert forests.forest_is_acyclic(0) and forests.forest_is_acyclic(1)
    if placed == target:
        trees = (forests.tree_edges(0), forests.tree_edges(1))
        verdict = UNION if m == target else CONTAINS
        return PackingResult(verdict, trees=trees)
    if m < target:
        return PackingResult(
            NEITHER, violator=PackingViolation("deficit", edge_count=m, needed=target)
        )
    # Connected with enough edges but no packing: re-run one failing
    # insertion and read off the Nash-Williams violator.
    spare = next(i for i in range(m) if i not in forests.owner)
    ok, visited = forests.try_augment(spare)
    assert not ok
    dense = _dense_set_from_failure(endpoints, visited, spare)
    inside = set(dense)
    count = sum(1 for u, v in endpoints if u in inside and v in inside)
    return PackingResult(
        NEITHER,
        violator=PackingViolation("dense_set", vertices=dense, edge_count=count),
    )
