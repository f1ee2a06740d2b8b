"""Shared state schema for the pipeline graph"""
import math
import operator
from enum import Enum
from typing import Annotated, Any, Dict, List, Optional, Tuple, TypedDict

from pydantic import BaseModel, Field, field_validator, model_validator

from ..apps.remeshing import IterationStatistics
from ..config import DEFAULT_SEED, SMOOTHING_WEIGHT
from ..multimesh.multimesh import MultiMesh
from ..scheduling.scheduler import PassStatistics


# ============================================================================
# Pydantic Models
# ============================================================================

class PipelineKind(str, Enum):
    """Application pipeline to run."""
    SEAM_DECIMATE = "seam_decimate"
    EMBEDDED_REMESH = "embedded_remesh"
    PERIODIC2D = "periodic2d"


class PipelineConfig(BaseModel):
    """Parameters of one pipeline run; also the schema of ``--config`` files."""
    kind: PipelineKind = Field(..., description="Which pipeline to run")
    input_path: Optional[str] = Field(None, description="OBJ or MEDIT input file")
    output_path: Optional[str] = Field(None, description="Main output file")
    surface_output_path: Optional[str] = Field(None, description="OBJ of the remeshed surface (embedded only)")
    archive_path: Optional[str] = Field(None, description="Optional multimesh archive of the result")
    target_faces: Optional[int] = Field(None, description="Facet count to decimate to")
    target_length: Optional[float] = Field(None, description="Target edge length L; default mean edge length")
    iterations: int = Field(1, description="Remeshing iterations")
    envelope_eps: Optional[float] = Field(None, description="Envelope tolerance; None is unbounded")
    smoothing_weight: float = Field(SMOOTHING_WEIGHT, description="Laplacian step toward the neighbour centroid")
    period: Optional[Tuple[float, float]] = Field(None, description="Tile period along x and y")
    seed: int = Field(DEFAULT_SEED, description="Seed for sampled envelopes")

    @field_validator("target_faces")
    @classmethod
    def _positive_count(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value <= 0:
            raise ValueError("target_faces must be positive")
        return value

    @field_validator("target_length", "envelope_eps")
    @classmethod
    def _positive_length(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and (math.isnan(value) or value <= 0):
            raise ValueError("lengths must be positive")
        return value

    @field_validator("iterations")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("iterations must be non-negative")
        return value

    @field_validator("smoothing_weight")
    @classmethod
    def _unit_weight(cls, value: float) -> float:
        if not 0.0 < value <= 1.0:
            raise ValueError("smoothing_weight must lie in (0, 1]")
        return value

    @field_validator("period")
    @classmethod
    def _positive_period(cls, value: Optional[Tuple[float, float]]) -> Optional[Tuple[float, float]]:
        if value is not None and min(value) <= 0:
            raise ValueError("period lengths must be positive")
        return value

    @model_validator(mode="after")
    def _kind_parameters(self) -> "PipelineConfig":
        if self.kind == PipelineKind.SEAM_DECIMATE and self.target_faces is None:
            raise ValueError("seam_decimate needs target_faces")
        if self.kind == PipelineKind.PERIODIC2D and self.period is None:
            raise ValueError("periodic2d needs period")
        return self

    @property
    def envelope(self) -> float:
        return math.inf if self.envelope_eps is None else self.envelope_eps


class RunStatistics(BaseModel):
    """Machine-readable outcome of a run (the ``--json-stats`` payload)."""
    pipeline: PipelineKind = Field(..., description="Pipeline that produced these numbers")
    passes: List[PassStatistics] = Field(default_factory=list, description="Every scheduler pass in order")
    iterations: List[IterationStatistics] = Field(default_factory=list, description="Remeshing iterations")
    totals: Dict[str, int] = Field(default_factory=dict, description="Sums over all passes")
    before: Dict[str, Any] = Field(default_factory=dict, description="Pipeline metrics before optimizing")
    after: Dict[str, Any] = Field(default_factory=dict, description="Pipeline metrics after optimizing")
    valid: bool = Field(True, description="All nodes valid and all maps consistent at the end")

    def add_pass(self, stats: PassStatistics) -> None:
        self.passes.append(stats)
        for key in ("attempted", "accepted", "rejected_by_link", "rejected_by_invariant",
                    "rejected_by_precondition"):
            self.totals[key] = self.totals.get(key, 0) + getattr(stats, key)


# ============================================================================
# Graph State (TypedDict)
# ============================================================================

class PipelineState(TypedDict):
    """
    The state object passed between all nodes in the graph.
    """
    # Run parameters
    config: PipelineConfig

    # Loaded meshes keyed by role ("positions", "uv", "corners", "tets", "triangles", "tile")
    inputs: Optional[Dict[str, Any]]

    # The multimesh under optimization
    multimesh: Optional[MultiMesh]

    # Periodic domain for periodic2d runs
    domain: Optional[Any]

    statistics: Optional[RunStatistics]

    # Files written by the export stage
    outputs: List[str]

    # Progress notes appended by every stage
    notes: Annotated[List[str], operator.add]

    # First stage error; routes the graph to END
    error: Optional[str]
