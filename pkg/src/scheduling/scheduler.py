"""Priority-driven passes of propagated operations"""
import heapq
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .. import config
from ..errors import InvariantViolation, LinkConditionError, MultiMeshError
from ..mesh.mesh import Mesh
from ..multimesh.multimesh import MultiMesh
from ..multimesh.propagation import propagate
from ..operations.records import OperationKind
from ..utils.logger import log_operation
from .invariants import Invariant

Edge = Tuple[int, int]
# Lower scores pop first; None keeps the edge out of the queue
ScoreFn = Callable[[Mesh, Edge], Optional[float]]
# Keyword arguments for propagate (edge, keep, t, ...) or None to skip
PlanFn = Callable[[MultiMesh, str, Edge], Optional[Dict[str, Any]]]


class PassStatistics(BaseModel):
    """Counters of one pass; attempted equals accepted plus all rejections."""
    name: str = Field(..., description="Pass name")
    attempted: int = 0
    accepted: int = 0
    rejected_by_link: int = 0
    rejected_by_invariant: int = 0
    rejected_by_precondition: int = 0

    @property
    def rejected(self) -> int:
        return self.rejected_by_link + self.rejected_by_invariant + self.rejected_by_precondition

    @property
    def consistent(self) -> bool:
        return self.attempted == self.accepted + self.rejected

    def merge(self, other: "PassStatistics") -> "PassStatistics":
        return PassStatistics(
            name=self.name,
            attempted=self.attempted + other.attempted,
            accepted=self.accepted + other.accepted,
            rejected_by_link=self.rejected_by_link + other.rejected_by_link,
            rejected_by_invariant=self.rejected_by_invariant + other.rejected_by_invariant,
            rejected_by_precondition=self.rejected_by_precondition + other.rejected_by_precondition,
        )


class PassConfig(BaseModel):
    """What a pass does: which node, which operation, in what order, until when."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str = Field(..., description="Name used in statistics")
    node: str = Field(..., description="Node whose edges are scheduled")
    operation: OperationKind = Field(..., description="split, collapse or swap")
    score: ScoreFn = Field(..., description="Priority of an edge, lower first")
    plan: Optional[PlanFn] = Field(None, description="Turns an edge into propagate arguments")
    stop: Optional[Callable[[MultiMesh, PassStatistics], bool]] = Field(None, description="Early stop criterion")
    invariants: List[Invariant] = Field(default_factory=list, description="Pass-scoped after-invariants")
    split_t: float = Field(0.5, description="Split parameter when no plan is given")
    max_attempts: Optional[int] = Field(None, description="Hard cap on attempts")


class Scheduler:
    """
    Priority queue of (score, edge, stamp) entries over one node.

    The stamp is the pair of endpoint vertex stamps at push time; an entry
    whose stamp no longer matches was invalidated by an earlier operation and
    is dropped on pop.
    """

    def __init__(self, mm: MultiMesh, pass_config: PassConfig):
        self.mm = mm
        self.config = pass_config
        self.mesh = mm.mesh(pass_config.node)
        self.heap: List[Tuple[float, Edge, Tuple[int, int]]] = []

    def stamp(self, edge: Edge) -> Tuple[int, int]:
        return self.mesh.vertex_stamp[edge[0]], self.mesh.vertex_stamp[edge[1]]

    def push(self, edge: Iterable[int]) -> None:
        key = tuple(sorted(int(v) for v in edge))
        if not self.mesh.has_simplex(key):
            return
        score = self.config.score(self.mesh, key)
        if score is not None:
            heapq.heappush(self.heap, (float(score), key, self.stamp(key)))

    def push_around(self, vertices: Iterable[int]) -> None:
        seen = set()
        for v in sorted(vertices):
            if not self.mesh.is_vertex_alive(v):
                continue
            for u in sorted(self.mesh.vertex_neighbors(v)):
                key = (min(u, v), max(u, v))
                if key not in seen:
                    seen.add(key)
                    self.push(key)

    def pop(self) -> Optional[Edge]:
        """Next edge whose entry is still current, or None when exhausted."""
        while self.heap:
            _, key, stamp = heapq.heappop(self.heap)
            if self.mesh.has_simplex(key) and self.stamp(key) == stamp:
                return key
        return None

    def run(self) -> PassStatistics:
        cfg = self.config
        stats = PassStatistics(name=cfg.name)
        for e in self.mesh.edges():
            self.push(e)
        while True:
            if cfg.stop is not None and cfg.stop(self.mm, stats):
                break
            if cfg.max_attempts is not None and stats.attempted >= cfg.max_attempts:
                break
            edge = self.pop()
            if edge is None:
                break
            stats.attempted += 1
            outcome = "accepted"
            try:
                kwargs = cfg.plan(self.mm, cfg.node, edge) if cfg.plan else {"edge": edge}
                if kwargs is None:
                    stats.rejected_by_precondition += 1
                    outcome = "precondition"
                    continue
                if cfg.operation == OperationKind.SPLIT and cfg.plan is None:
                    kwargs["t"] = cfg.split_t
                result = propagate(self.mm, cfg.node, cfg.operation, invariants=cfg.invariants, **kwargs)
            except LinkConditionError:
                stats.rejected_by_link += 1
                outcome = "link"
            except InvariantViolation:
                stats.rejected_by_invariant += 1
                outcome = "invariant"
            except MultiMeshError:
                stats.rejected_by_precondition += 1
                outcome = "precondition"
            else:
                stats.accepted += 1
                touched = {v for fid in result.touched().get(cfg.node, ()) if self.mesh.is_facet_alive(fid)
                           for v in self.mesh.facet(fid)}
                self.push_around(touched | result.touched_vertices(cfg.node))
            finally:
                if config.LOG_OPERATIONS:
                    log_operation(cfg.name, cfg.operation.value, list(edge), outcome)
        return stats


def run_pass(mm: MultiMesh, pass_config: PassConfig) -> PassStatistics:
    """Run one scheduled pass to exhaustion or until its stop criterion holds."""
    return Scheduler(mm, pass_config).run()
