"""Exact geometry: rigidity matrices, frame matrices, realization from
prescribed slopes, equivalence/congruence tests and framework sampling.

All coordinates are exact rationals; lengths are handled as squared
lengths throughout, so no radicals ever arise.  Randomized constructions
take an explicit seed and are fully reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .graph_core import (
    DIR,
    LEN,
    Edge,
    GraphError,
    MixedGraph,
    Multigraph,
    Pair,
    PreconditionError,
    norm_pair,
)
from .linalg import exact_rank, nullspace, rational_sqrt
from .seeds import make_rng

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Framework:
    """A mixed graph with an exact rational point for every vertex."""

    graph: MixedGraph
    coords: dict[str, Point]

    def point(self, v: str) -> Point:
        return self.coords[v]

    def to_json_dict(self) -> dict:
        out = {}
        for v in sorted(self.coords):
            x, y = self.coords[v]
            out[v] = [[x.numerator, x.denominator], [y.numerator, y.denominator]]
        return {"coords": out}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class MeasurementVector:
    """Squared lengths and slopes read off a framework, in canonical edge order."""

    lengths: tuple[tuple[Pair, Fraction], ...]
    slopes: tuple[tuple[Pair, Fraction], ...]


@dataclass(frozen=True)
class RigidityMatrixValue:
    """Exact rigidity matrix: one row per edge, a column pair per vertex."""

    rows: tuple[tuple[Fraction, ...], ...]
    edges: tuple[Edge, ...]
    vertices: tuple[str, ...]

    @property
    def ncols(self) -> int:
        return 2 * len(self.vertices)


def _as_fraction_pair(value) -> Point:
    x, y = value
    return (Fraction(x), Fraction(y))


def parse_framework(text: str, graph: MixedGraph) -> Framework:
    """Parse framework JSON: ``{"coords": {v: [[xn, xd], [yn, yd]], ...}}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict) or "coords" not in doc or not isinstance(doc["coords"], dict):
        raise GraphError('framework document must be {"coords": {...}}')
    coords: dict[str, Point] = {}
    for v, val in doc["coords"].items():
        try:
            (xn, xd), (yn, yd) = val
            coords[v] = (Fraction(xn, xd), Fraction(yn, yd))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise GraphError(f"coords[{v!r}]: expected [[num, den], [num, den]]") from exc
    missing = set(graph.vertices) - set(coords)
    if missing:
        raise GraphError(f"coordinates missing for vertices {sorted(missing)!r}")
    extra = set(coords) - set(graph.vertices)
    if extra:
        raise GraphError(f"coordinates given for undeclared vertices {sorted(extra)!r}")
    return Framework(graph, coords)


def rigidity_matrix(graph: MixedGraph, framework: Framework) -> RigidityMatrixValue:
    """Exact rigidity matrix of (G, p); edge orientation u -> v with u < v."""
    verts = graph.sorted_vertices()
    col = {v: 2 * i for i, v in enumerate(verts)}
    ncols = 2 * len(verts)
    rows = []
    edges = graph.edges()
    for u, v, kind in edges:
        pu, pv = framework.point(u), framework.point(v)
        if pu == pv:
            raise PreconditionError(f"coincident endpoints on edge ({u!r}, {v!r})")
        a, b = pu[0] - pv[0], pu[1] - pv[1]
        row = [Fraction(0)] * ncols
        cu, cv = col[u], col[v]
        if kind == LEN:
            row[cu], row[cu + 1] = a, b
            row[cv], row[cv + 1] = -a, -b
        else:
            row[cu], row[cu + 1] = b, -a
            row[cv], row[cv + 1] = -b, a
        rows.append(tuple(row))
    return RigidityMatrixValue(tuple(rows), edges, verts)


def numeric_rank(matrix) -> int:
    """Exact rank over the rationals of a RigidityMatrixValue or raw rows."""
    if isinstance(matrix, RigidityMatrixValue):
        rows, ncols = matrix.rows, matrix.ncols
    else:
        rows = [tuple(r) for r in matrix]
        ncols = len(rows[0]) if rows else 0
    return exact_rank(rows, ncols)


def infinitesimally_rigid(graph: MixedGraph, framework: Framework) -> bool:
    if graph.n <= 1:
        return True
    return numeric_rank(rigidity_matrix(graph, framework)) == 2 * graph.n - 2


def random_generic_framework(graph: MixedGraph, seed: int = 0) -> Framework:
    """Framework with independent uniform 62-bit integer coordinates.

    With overwhelming probability the rigidity matrix at these points
    attains the generic rank; genericity itself is not certifiable.
    """
    rng = make_rng(seed, "framework")
    coords = {
        v: (Fraction(rng.getrandbits(62)), Fraction(rng.getrandbits(62)))
        for v in graph.sorted_vertices()
    }
    return Framework(graph, coords)


def measurements(graph: MixedGraph, framework: Framework) -> MeasurementVector:
    """Squared length per length edge and slope per direction edge."""
    lengths = []
    slopes = []
    for u, v, kind in graph.edges():
        (ux, uy), (vx, vy) = framework.point(u), framework.point(v)
        if kind == LEN:
            lengths.append(((u, v), (ux - vx) ** 2 + (uy - vy) ** 2))
        else:
            if ux == vx:
                raise PreconditionError(f"direction edge ({u!r}, {v!r}) is vertical")
            slopes.append(((u, v), (uy - vy) / (ux - vx)))
    return MeasurementVector(tuple(lengths), tuple(slopes))


def frame_matrix(multigraph: Multigraph, q) -> list[list[Fraction]]:
    """Incidence matrix of the frame (H, q): row e carries q(e) at u, -q(e) at v.

    ``q`` is a sequence of rational pairs aligned with ``multigraph.edges``.
    """
    if len(q) != len(multigraph.edges):
        raise PreconditionError("one frame vector per edge is required")
    verts = tuple(sorted(multigraph.vertices))
    col = {v: 2 * i for i, v in enumerate(verts)}
    rows = []
    for (u, v, _), qe in zip(multigraph.edges, q):
        qx, qy = _as_fraction_pair(qe)
        row = [Fraction(0)] * (2 * len(verts))
        row[col[u]], row[col[u] + 1] = qx, qy
        row[col[v]], row[col[v] + 1] = -qx, -qy
        rows.append(row)
    return rows


def _count_condition_2m3(vertices, pairs) -> bool:
    """i(X) <= 2|X| - 3 for every X with |X| >= 2, by subset enumeration."""
    verts = tuple(sorted(vertices))
    if len(verts) > 20:
        raise PreconditionError("count check supports at most 20 vertices")
    index = {v: i for i, v in enumerate(verts)}
    masks = [(1 << index[u]) | (1 << index[v]) for u, v in pairs]
    for x in range(1, 1 << len(verts)):
        size = x.bit_count() if hasattr(x, "bit_count") else bin(x).count("1")
        if size < 2:
            continue
        inside = sum(1 for m in masks if m & x == m)
        if inside > 2 * size - 3:
            return False
    return True


def realize_from_slopes(
    vertices,
    slopes: dict[Pair, Fraction],
    x0: str,
    y0: str,
    z0: str,
    t2,
    seed: int = 0,
) -> Framework:
    """Realize a direction graph with prescribed edge slopes.

    Returns p with p(z0) = (0, 0), squared distance t2 between p(x0) and
    p(y0), and p(u) - p(v) parallel to (1, s_e) on every edge; all
    constraints hold exactly.  On count-tight inputs (|E| = 2|V| - 3) the
    solution is unique up to dilation by -1 and the canonical representative
    (lexicographically larger coordinate vector) is returned.
    """
    verts = tuple(sorted(dict.fromkeys(vertices)))
    pairs = sorted(norm_pair(u, v) for u, v in slopes)
    slope_of = {norm_pair(u, v): Fraction(s) for (u, v), s in slopes.items()}
    t2 = Fraction(t2)
    if x0 == y0:
        raise PreconditionError("x0 and y0 must be distinct")
    for name, v in (("x0", x0), ("y0", y0), ("z0", z0)):
        if v not in verts:
            raise PreconditionError(f"{name} = {v!r} is not a vertex")
    if t2 <= 0:
        raise PreconditionError("t2 must be a positive rational")
    if len(set(slope_of.values())) != len(slope_of):
        raise PreconditionError("edge slopes must be pairwise distinct")
    if not _count_condition_2m3(verts, pairs):
        raise PreconditionError("slope graph violates i(X) <= 2|X| - 3")

    # Columns for every vertex except z0, which is pinned at the origin.
    free = [v for v in verts if v != z0]
    col = {v: 2 * i for i, v in enumerate(free)}
    ncols = 2 * len(free)
    rows = []
    for u, v in pairs:
        s = slope_of[(u, v)]
        row = [Fraction(0)] * ncols
        for vertex, sign in ((u, 1), (v, -1)):
            if vertex == z0:
                continue
            row[col[vertex]] += sign * s
            row[col[vertex] + 1] -= sign
        rows.append(row)
    basis = nullspace(rows, ncols)
    if not basis:
        raise PreconditionError("slope system admits only the zero solution")

    rng = make_rng(seed, "slope-realization")
    candidate = None
    for _ in range(32):
        coeffs = [Fraction(rng.randrange(-(2**31), 2**31)) for _ in basis]
        vec = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(ncols)]
        points = {z0: (Fraction(0), Fraction(0))}
        for v in free:
            points[v] = (vec[col[v]], vec[col[v] + 1])
        if len(set(points.values())) == len(verts):
            candidate = points
            break
    if candidate is None:
        raise PreconditionError("no injective realization found; slopes are degenerate")

    dx = candidate[x0][0] - candidate[y0][0]
    dy = candidate[x0][1] - candidate[y0][1]
    d2 = dx * dx + dy * dy
    lam = rational_sqrt(t2 / d2)
    if lam is None:
        raise PreconditionError(
            "t2 is not attainable exactly over the rationals for these slopes"
        )
    scaled = {v: (lam * x, lam * y) for v, (x, y) in candidate.items()}
    flat = tuple(c for v in verts for c in scaled[v])
    if tuple(-c for c in flat) > flat:
        scaled = {v: (-x, -y) for v, (x, y) in scaled.items()}

    graph = MixedGraph.build(verts, dir_edges=pairs)
    return Framework(graph, scaled)


def are_equivalent(graph: MixedGraph, p: Framework, q: Framework) -> bool:
    """Same direction (up to scalar) on every direction edge, same length on
    every length edge; exact tests."""
    for u, v in sorted(graph.dir_edges):
        pu, pv = p.point(u), p.point(v)
        qu, qv = q.point(u), q.point(v)
        if qu == qv:
            continue
        cross = (pu[0] - pv[0]) * (qu[1] - qv[1]) - (pu[1] - pv[1]) * (qu[0] - qv[0])
        if cross != 0:
            return False
    for u, v in sorted(graph.len_edges):
        pu, pv = p.point(u), p.point(v)
        qu, qv = q.point(u), q.point(v)
        lp = (pu[0] - pv[0]) ** 2 + (pu[1] - pv[1]) ** 2
        lq = (qu[0] - qv[0]) ** 2 + (qu[1] - qv[1]) ** 2
        if lp != lq:
            return False
    return True


def are_congruent(p: Framework, q: Framework) -> bool:
    """Related by a translation, possibly composed with a point reflection."""
    if set(p.coords) != set(q.coords):
        raise PreconditionError("frameworks are on different vertex sets")
    verts = sorted(p.coords)
    if not verts:
        return True
    first = verts[0]
    for flip in (1, -1):
        px, py = p.point(first)
        qx, qy = q.point(first)
        tx, ty = qx - flip * px, qy - flip * py
        if all(
            q.point(v) == (flip * p.point(v)[0] + tx, flip * p.point(v)[1] + ty)
            for v in verts
        ):
            return True
    return False


# -- random minimally rigid graphs ---------------------------------------


def _zero_extension_moves(verts, delta_range) -> list[tuple]:
    moves = []
    types = ((DIR, DIR), (DIR, LEN), (LEN, LEN))
    for t1, t2 in types:
        delta = (t1 == LEN) + (t2 == LEN)
        if delta not in delta_range:
            continue
        for i, a in enumerate(verts):
            for b in verts[i:]:
                if a == b and t1 == t2:
                    continue  # parallel same-type pair
                moves.append(("ext0", a, t1, b, t2))
    return moves


def _one_extension_moves(verts, edges, delta_range) -> list[tuple]:
    moves = []
    type_triples = [
        (k1, k2, k3) for k1 in (DIR, LEN) for k2 in (DIR, LEN) for k3 in (DIR, LEN)
    ]
    for u, v, kind in edges:
        for w in verts:
            for k1, k2, k3 in type_triples:
                new = [(u, k1), (v, k2), (w, k3)]
                kinds = (k1, k2, k3)
                if kinds.count(kind) == 0:
                    continue  # the deleted type must not shrink
                delta = kinds.count(LEN) - (kind == LEN)
                if delta not in delta_range:
                    continue
                seen: dict[tuple[str, str], int] = {}
                ok = True
                for tgt, k in new:
                    if (tgt, k) in seen:
                        ok = False  # same-type parallel pair at v
                        break
                    seen[(tgt, k)] = 1
                if ok:
                    moves.append(("ext1", (u, v, kind), tuple(new)))
    return moves


def random_minimally_rigid(n: int, seed: int = 0, length_budget: int = 1) -> MixedGraph:
    """Random minimally rigid mixed graph on n vertices with a prescribed
    number of length edges.

    Built from a single vertex by seeded random vertex extensions (two new
    edges, or delete-one-add-three); every intermediate graph is minimally
    rigid, hence the result is independent with 2n - 2 edges.  Feasible
    budgets: 0 for n = 1, otherwise 1 <= budget <= 2n - 3.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    width = len(str(n))
    names = [f"v{str(i + 1).zfill(width)}" for i in range(n)]
    if n == 1:
        if length_budget != 0:
            raise PreconditionError("a single vertex carries no edges")
        return MixedGraph.build(names[:1])
    if not 1 <= length_budget <= 2 * n - 3:
        raise PreconditionError(
            f"length budget {length_budget} infeasible for n = {n} (need 1..{2 * n - 3})"
        )
    rng = make_rng(seed, "minimally-rigid", n, length_budget)
    dirs: set[Pair] = set()
    lens: set[Pair] = set()
    for k in range(1, n):
        new = names[k]
        existing = names[:k]
        steps_after = n - 1 - k
        have = len(lens)
        lo = max(0, length_budget - have - 2 * steps_after)
        hi = min(2, length_budget - have)
        delta_range = range(lo, hi + 1)
        edges = sorted(
            [(u, v, DIR) for u, v in dirs] + [(u, v, LEN) for u, v in lens]
        )
        moves = _zero_extension_moves(existing, delta_range)
        if k >= 2:
            moves += _one_extension_moves(existing, edges, delta_range)
        move = moves[rng.randrange(len(moves))]
        if move[0] == "ext0":
            _, a, t1, b, t2 = move
            for tgt, kind in ((a, t1), (b, t2)):
                (dirs if kind == DIR else lens).add(norm_pair(new, tgt))
        else:
            _, (u, v, kind), additions = move
            (dirs if kind == DIR else lens).discard(norm_pair(u, v))
            for tgt, k2 in additions:
                (dirs if k2 == DIR else lens).add(norm_pair(new, tgt))
    graph = MixedGraph.build(names, dirs, lens)
    assert len(graph.len_edges) == length_budget
    assert graph.edge_count == 2 * n - 2
    return graph
