"""Application pipelines built on the multimesh"""
from .embedded_remesh import SURFACE_NODE, build_embedded_multimesh, embedded_invariants, embedded_remesh
from .periodic import (
    TILE_NODE,
    PeriodicTile,
    boundary_congruent,
    build_periodic_multimesh,
    periodic_classes,
    periodic_invariants,
    periodic_remesh,
    planar,
    tileability_invariant,
    torus_characteristic,
)
from .remeshing import (
    COLLAPSE_FACTOR,
    SPLIT_FACTOR,
    IterationStatistics,
    collapse_pass,
    collapse_plan,
    remesh_iteration,
    split_pass,
    swap_pass,
    valence_gain,
)
from .seam_decimate import (
    UV_NODE,
    SeamReport,
    build_seam_multimesh,
    decimation_pass,
    seam_decimate,
    seam_edges,
    seam_report,
)

__all__ = [
    "SURFACE_NODE", "build_embedded_multimesh", "embedded_invariants", "embedded_remesh",
    "TILE_NODE", "PeriodicTile", "boundary_congruent", "build_periodic_multimesh", "periodic_classes",
    "periodic_invariants", "periodic_remesh", "planar", "tileability_invariant", "torus_characteristic",
    "COLLAPSE_FACTOR", "SPLIT_FACTOR", "IterationStatistics", "collapse_pass", "collapse_plan",
    "remesh_iteration", "split_pass", "swap_pass", "valence_gain",
    "UV_NODE", "SeamReport", "build_seam_multimesh", "decimation_pass", "seam_decimate", "seam_edges",
    "seam_report",
]
