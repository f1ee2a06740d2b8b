"""Sampled distance envelope around a reference surface"""
import math
from itertools import combinations
from typing import Iterable, Optional

import numpy as np
from scipy.spatial import cKDTree

from .. import config
from ..mesh.geometry import measure
from ..mesh.mesh import POSITION, Mesh
from .invariants import Invariant, _alive


class Envelope:
    """
    Points within ``eps`` of a point sample of the reference mesh.

    The sample holds every vertex, every edge midpoint and seeded random
    barycentric points on each facet, so the same inputs always give the same
    envelope. Distance to the sample never underestimates distance to the
    reference, so a point accepted here is within ``eps`` of it. The converse
    only holds up to the sample density: a point within ``eps`` of the surface
    but far from every sample is rejected. ``admits`` checks corners, edge
    midpoints and centroids, so a facet can still leave the envelope between
    those points by about its own size.

    By default each facet gets one sample per ``eps**2`` of its measure,
    and never fewer than ``ENVELOPE_SAMPLES_PER_FACET``.
    """

    def __init__(self, reference: Mesh, eps: float, samples_per_facet: Optional[int] = None,
                 seed: Optional[int] = None, attribute: str = POSITION):
        self.eps = float(eps)
        self.attribute = attribute
        rng = np.random.default_rng(config.DEFAULT_SEED if seed is None else seed)
        values = reference.vertex_attribute(attribute).values
        points = [values[reference.vertices()]]
        edges = np.asarray(reference.edges(), dtype=int).reshape(-1, 2)
        if len(edges):
            points.append(0.5 * (values[edges[:, 0]] + values[edges[:, 1]]))
        for _, f in reference.facets():
            n = self._sample_count(values[list(f)]) if samples_per_facet is None else samples_per_facet
            if n <= 0 or len(f) < 2:
                continue
            weights = rng.dirichlet(np.ones(len(f)), size=n)
            points.append(weights @ values[list(f)])
        self.points = np.vstack(points)
        self.tree = cKDTree(self.points)

    def _sample_count(self, corners: np.ndarray) -> int:
        floor = config.ENVELOPE_SAMPLES_PER_FACET
        if math.isinf(self.eps):
            return floor
        return max(floor, min(config.ENVELOPE_MAX_SAMPLES_PER_FACET, math.ceil(measure(corners) / self.eps ** 2)))

    def distance(self, points: np.ndarray) -> np.ndarray:
        dist, _ = self.tree.query(np.atleast_2d(points))
        return dist

    def contains(self, point: np.ndarray) -> bool:
        if math.isinf(self.eps):
            return True
        return bool(self.distance(point)[0] <= self.eps)

    def contains_all(self, points: np.ndarray) -> bool:
        if math.isinf(self.eps):
            return True
        return bool(np.all(self.distance(points) <= self.eps))

    def admits(self, mesh: Mesh, facets: Optional[Iterable[int]] = None) -> bool:
        """Vertices, edge midpoints and centroids of the facets lie inside."""
        if math.isinf(self.eps):
            return True
        values = mesh.vertex_attribute(self.attribute).values
        queries = []
        for fid in _alive(mesh, facets):
            corners = values[list(mesh.facet(fid))]
            queries.append(corners)
            queries.append(corners.mean(axis=0, keepdims=True))
            queries.extend(0.5 * (corners[i] + corners[j])[None, :] for i, j in combinations(range(len(corners)), 2))
        if not queries:
            return True
        return self.contains_all(np.vstack(queries))


def envelope_invariant(node: str, envelope: Envelope) -> Invariant:
    return Invariant(name="envelope", scope_node=node, predicate=envelope.admits)
