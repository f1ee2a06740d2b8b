"""Remeshing of a periodic 2D tile through a torus-topology root"""
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .. import config
from ..errors import ConstructionError
from ..mesh.geometry import mean_edge_length
from ..mesh.mesh import POSITION, Mesh
from ..mesh.topology import euler_characteristic, validate
from ..multimesh.construction import FacetPairing, from_facet_bijection
from ..multimesh.multimesh import MultiMesh
from ..scheduling.invariants import Invariant, no_inversion_invariant
from .remeshing import IterationStatistics, remesh_iteration

TILE_NODE = "tile"


class PeriodicTile:
    """Axis-aligned periodic domain [origin, origin + period] of a planar tile."""

    def __init__(self, origin: Sequence[float], period: Sequence[float], tolerance: Optional[float] = None):
        self.origin = np.asarray(origin, dtype=float)
        self.period = np.asarray(period, dtype=float)
        self.tolerance = config.PERIODIC_TOLERANCE if tolerance is None else float(tolerance)
        if self.period.shape != (2,) or np.any(self.period <= 0):
            raise ConstructionError(f"period must be two positive lengths, got {list(self.period)}")

    def sides(self, point: np.ndarray) -> Tuple[bool, bool]:
        """Whether a point lies on an x side and on a y side of the domain."""
        local = np.asarray(point, dtype=float) - self.origin
        on = [min(abs(local[i]), abs(local[i] - self.period[i])) <= self.tolerance for i in range(2)]
        return on[0], on[1]

    def rank(self, point: np.ndarray) -> int:
        """0 inside, 1 on a side, 2 on a corner."""
        return sum(self.sides(point))

    def wrap(self, points: np.ndarray) -> np.ndarray:
        local = np.mod(np.asarray(points, dtype=float) - self.origin, self.period)
        return np.where(np.abs(local - self.period) <= self.tolerance, 0.0, local)

    def congruent(self, p: np.ndarray, q: np.ndarray) -> bool:
        """p and q differ by an integer combination of the period vectors."""
        steps = (np.asarray(q, dtype=float) - np.asarray(p, dtype=float)) / self.period
        return bool(np.all(np.abs(steps - np.round(steps)) * self.period <= self.tolerance))


def planar(mesh: Mesh) -> Mesh:
    """Copy of a tile whose positions keep only x and y."""
    values = mesh.positions()
    if values.shape[1] == 2:
        return mesh.copy()
    return Mesh.from_facets(2, [f for _, f in mesh.facets()], vertex_count=mesh.vertex_count,
                            positions=values[:, :2])


def periodic_classes(tile: Mesh, domain: PeriodicTile) -> Dict[int, int]:
    """
    Tile vertex -> torus vertex, merging vertices equal modulo the period.

    Every tile boundary vertex must lie on the domain border and have a
    partner on the opposite side, otherwise ConstructionError names it.
    """
    verts = tile.vertices()
    values = tile.positions()[verts]
    wrapped = domain.wrap(values)
    pairs = np.array(sorted(cKDTree(wrapped).query_pairs(domain.tolerance)), dtype=int).reshape(-1, 2)
    n = len(verts)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    sizes = np.bincount(labels, minlength=labels.max() + 1 if n else 0)
    boundary = {v for face in tile.boundary_faces() for v in face}
    for i, v in enumerate(verts):
        rank = domain.rank(values[i])
        expected = 2 ** rank
        if v in boundary and rank == 0:
            raise ConstructionError(f"tile boundary vertex {v} is not on the period border", witness=v)
        if sizes[labels[i]] != expected:
            raise ConstructionError(
                f"tile vertex {v} has {sizes[labels[i]] - 1} periodic partners, expected {expected - 1}",
                witness=v)
    # Torus ids follow the smallest tile vertex of each class.
    first: Dict[int, int] = {}
    for i, v in enumerate(verts):
        first.setdefault(int(labels[i]), v)
    order = {label: k for k, label in enumerate(sorted(first, key=first.get))}
    return {v: order[int(labels[i])] for i, v in enumerate(verts)}


def build_periodic_multimesh(tile: Mesh, period: Sequence[float], origin: Optional[Sequence[float]] = None,
                             tolerance: Optional[float] = None) -> Tuple[MultiMesh, PeriodicTile]:
    """Torus connectivity root (no positions) with the planar tile as child."""
    tile = planar(tile)
    values = tile.positions()[tile.vertices()]
    domain = PeriodicTile(values.min(axis=0) if origin is None else origin, period, tolerance)
    classes = periodic_classes(tile, domain)
    torus_facets = []
    for _, f in tile.facets():
        image = tuple(classes[v] for v in f)
        if len(set(image)) != len(image):
            raise ConstructionError(f"tile facet {f} wraps onto itself; refine the tile", witness=f)
        torus_facets.append(image)
    root = Mesh.from_facets(2, torus_facets, vertex_count=max(classes.values()) + 1)
    report = validate(root)
    if not report.is_valid:
        raise ConstructionError(f"merged torus is not a valid mesh: {report.lines()[0]}",
                                witness=report.violations[0].witness)
    pairing = [FacetPairing(parent_facet=i, child_facet=fid, corners=[(v, classes[v]) for v in f])
               for i, (fid, f) in enumerate(tile.facets())]
    mm = MultiMesh(root)
    mm.add_child(mm.root_id, TILE_NODE, from_facet_bijection(root, tile, pairing))
    return mm, domain


def tileability_invariant(mm: MultiMesh, domain: PeriodicTile, node: str = TILE_NODE) -> Invariant:
    """All tile copies of a torus vertex stay congruent under the period."""
    cm = mm.maps[node]

    def predicate(mesh: Mesh, facets) -> bool:
        values = mesh.positions()
        fids = mesh.facet_ids() if facets is None else [f for f in facets if mesh.is_facet_alive(f)]
        seen = set()
        for fid in fids:
            for v in mesh.facet(fid):
                image = cm.vertex_image(v)
                if image in seen:
                    continue
                seen.add(image)
                copies = sorted(u for (u,) in cm.preimage((image,)))
                for u in copies[1:]:
                    if not domain.congruent(values[copies[0]], values[u]):
                        return False
        return True

    return Invariant(name="tileable", scope_node=node, predicate=predicate)


def periodic_invariants(mm: MultiMesh, domain: PeriodicTile, node: str = TILE_NODE) -> List[Invariant]:
    return [tileability_invariant(mm, domain, node), no_inversion_invariant(node, POSITION)]


def boundary_congruent(mm: MultiMesh, domain: PeriodicTile, node: str = TILE_NODE) -> bool:
    """Every torus vertex's tile copies are period translates of each other."""
    inv = tileability_invariant(mm, domain, node)
    return inv.predicate(mm.mesh(node), None)


def torus_characteristic(mm: MultiMesh) -> int:
    return euler_characteristic(mm.root)


def periodic_remesh(mm: MultiMesh, domain: PeriodicTile, target_length: Optional[float], iterations: int,
                    node: str = TILE_NODE, smoothing_weight: Optional[float] = None) -> List[IterationStatistics]:
    """
    Isotropic remeshing of the tile; the torus root keeps opposite sides identified.

    Side vertices only merge along their side and corners stay fixed.
    Smoothing moves interior vertices only.
    """
    tile = mm.mesh(node)
    if target_length is None:
        target_length = mean_edge_length(tile)

    def rank(v: int) -> int:
        return domain.rank(tile.vertex_value(POSITION, v))

    invariants = periodic_invariants(mm, domain, node)
    return [remesh_iteration(mm, node, target_length, i, invariants, rank=rank, smoothing_weight=smoothing_weight)
            for i in range(iterations)]
