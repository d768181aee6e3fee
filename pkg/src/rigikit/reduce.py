"""Direction reduction: rules R1 and R2, the direct reducibility test, and
full reduction to a direction-irreducible graph.

R1 deletes a direction edge lying in a direction-pure circuit of the
rigidity matroid.  R2 retains a proper induced subgraph whose contraction
is direction-pure and the union of two edge-disjoint spanning trees; on a
rigid direction-independent graph such a subgraph is exposed exactly when
deleting some direction edge leaves an unbounded graph with a single
nontrivial bounded component.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bounded import bounded_components
from .graph_core import DIR, Edge, MixedGraph, PreconditionError
from .matroid import direction_independent, generic_rank, is_rigid


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "R1" | "R2"
    r1_edge: Edge | None = None
    r1_circuit: frozenset[Edge] | None = None
    r2_block: tuple[str, ...] | None = None
    r2_witness_edge: Edge | None = None
    graph_after: str = ""  # hash of the graph the step produced

    def to_json_dict(self) -> dict:
        if self.kind == "R1":
            return {
                "kind": "R1",
                "edge": list(self.r1_edge),
                "circuit": sorted(list(e) for e in self.r1_circuit),
                "graph_after": self.graph_after,
            }
        return {
            "kind": "R2",
            "block": list(self.r2_block),
            "witness": list(self.r2_witness_edge),
            "graph_after": self.graph_after,
        }


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    result: MixedGraph
    partial: bool = False  # input was not rigid; only R1 was attempted

    def to_json_dict(self) -> dict:
        return {
            "steps": [s.to_json_dict() for s in self.steps],
            "result": self.result.to_json_dict(),
            "result_hash": self.result.hash_id(),
            "partial": self.partial,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


def find_R1(graph: MixedGraph, seed: int = 0) -> ReductionStep | None:
    """A direction edge inside a direction-pure circuit, when one exists."""
    ok, circuit = direction_independent(graph, seed=seed)
    if ok:
        return None
    edge = min(circuit)
    after = graph.delete_edge(edge)
    return ReductionStep(
        "R1", r1_edge=edge, r1_circuit=circuit, graph_after=after.hash_id()
    )


def _require_rigid_direction_independent(graph: MixedGraph, seed: int, op: str):
    if not is_rigid(graph, seed=seed):
        raise PreconditionError(f"{op}: graph is not rigid")
    ok, _ = direction_independent(graph, seed=seed)
    if not ok:
        raise PreconditionError(f"{op}: direction edges are dependent")


def find_R2(graph: MixedGraph, seed: int = 0) -> ReductionStep | None:
    """Scan direction edges for one whose removal leaves an unbounded graph
    with exactly one nontrivial bounded component; that component is the
    retained block.  Requires a rigid, direction-independent input."""
    _require_rigid_direction_independent(graph, seed, "find_R2")
    for edge in graph.edges():
        if edge[2] != DIR:
            continue
        decomposition = bounded_components(graph.delete_edge(edge), seed=seed)
        if len(decomposition.blocks) < 2:
            continue  # still bounded
        nontrivial = decomposition.nontrivial_blocks
        if len(nontrivial) == 1:
            block = nontrivial[0]
            after = graph.subgraph(block)
            return ReductionStep(
                "R2",
                r2_block=block,
                r2_witness_edge=edge,
                graph_after=after.hash_id(),
            )
    return None


def check_reduction_to(graph: MixedGraph, keep, seed: int = 0) -> bool:
    """Is the rigid, direction-independent ``graph`` direction reducible to
    its induced subgraph on ``keep``?

    Holds exactly when the subgraph contains every length edge and the
    number of discarded direction edges is twice the number of discarded
    vertices.
    """
    _require_rigid_direction_independent(graph, seed, "check_reduction_to")
    keep_set = set(keep)
    if not keep_set < set(graph.vertices) or not keep_set:
        raise PreconditionError("check_reduction_to: need a proper nonempty induced subgraph")
    sub = graph.subgraph(keep_set)
    if sub.len_edges != graph.len_edges:
        return False
    dropped_dirs = len(graph.dir_edges) - len(sub.dir_edges)
    dropped_verts = graph.n - sub.n
    return dropped_dirs == 2 * dropped_verts


def reduce_fully(graph: MixedGraph, seed: int = 0) -> ReductionTrace:
    """Apply R1 until exhausted, then R2, repeating until neither applies.

    Each step strictly decreases |D| or |V|, so this terminates.  On a
    non-rigid input only R1 is applied and the trace is flagged partial.
    """
    steps: list[ReductionStep] = []
    current = graph
    while True:
        step = find_R1(current, seed=seed)
        if step is not None:
            current = current.delete_edge(step.r1_edge)
            steps.append(step)
            continue
        if not is_rigid(current, seed=seed):
            return ReductionTrace(tuple(steps), current, partial=True)
        step = find_R2(current, seed=seed)
        if step is None:
            return ReductionTrace(tuple(steps), current)
        current = current.subgraph(step.r2_block)
        steps.append(step)


def is_direction_irreducible(graph: MixedGraph, seed: int = 0) -> bool:
    """Neither R1 nor R2 applies.

    On non-rigid input R2 is not searched (its enabling characterization
    assumes rigidity), matching reduce_fully.
    """
    if find_R1(graph, seed=seed) is not None:
        return False
    if not is_rigid(graph, seed=seed):
        return True
    return find_R2(graph, seed=seed) is None
