"""Small reference meshes used by the tests and the CLI demos"""
from itertools import permutations
from typing import Dict, List, Tuple

import numpy as np

from .mesh import Mesh


def tetrahedron_boundary() -> Mesh:
    """Closed 2-mesh: the four faces of a tetrahedron, oriented outward."""
    positions = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    faces = [(0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3)]
    return Mesh.from_facets(2, faces, positions=positions)


def single_tetrahedron() -> Mesh:
    positions = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    return Mesh.from_facets(3, [(0, 1, 2, 3)], positions=positions)


def two_tetrahedra() -> Mesh:
    """Two positively oriented tets sharing the face (0, 1, 2)."""
    positions = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    return Mesh.from_facets(3, [(0, 1, 2, 3), (0, 2, 1, 4)], positions=positions)


def hexagon_fan() -> Mesh:
    """Disk of six triangles around vertex 0, ring vertices 1..6 counter-clockwise."""
    angles = np.arange(6) * np.pi / 3.0
    positions = np.vstack([[0.0, 0.0], np.column_stack([np.cos(angles), np.sin(angles)])])
    faces = [(0, 1 + i, 1 + (i + 1) % 6) for i in range(6)]
    return Mesh.from_facets(2, faces, positions=positions)


def two_triangle_quad() -> Mesh:
    """Triangles {a,b,c} and {a,b,d} sharing edge ab = (0, 1)."""
    positions = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
    return Mesh.from_facets(2, [(0, 2, 1), (0, 1, 3)], positions=positions)


def three_fins() -> Mesh:
    """Three triangles sharing the edge (0, 1); violates the manifold condition."""
    return Mesh.from_facets(2, [(0, 1, 2), (0, 1, 3), (0, 1, 4)])


def path_mesh(n: int) -> Mesh:
    """1-mesh path 0 - 1 - ... - n."""
    positions = np.column_stack([np.arange(n + 1, dtype=float), np.zeros(n + 1)])
    return Mesh.from_facets(1, [(i, i + 1) for i in range(n)], positions=positions)


def square_grid(n: int, m: int = None, size: float = 1.0) -> Mesh:
    """
    n x m grid of the square [0, size]^2 split into CCW triangles.

    Vertex (i, j) with column i and row j has id j * (n + 1) + i.
    """
    m = n if m is None else m
    xs, ys = np.meshgrid(np.linspace(0.0, size, n + 1), np.linspace(0.0, size, m + 1))
    positions = np.column_stack([xs.ravel(), ys.ravel()])
    faces: List[Tuple[int, int, int]] = []
    for j in range(m):
        for i in range(n):
            v00 = j * (n + 1) + i
            v10, v01, v11 = v00 + 1, v00 + n + 1, v00 + n + 2
            faces.append((v00, v10, v11))
            faces.append((v00, v11, v01))
    return Mesh.from_facets(2, faces, positions=positions)


def cube_tet_grid(n: int, size: float = 1.0) -> Mesh:
    """
    Cube [0, size]^3 cut into n^3 cells of six positively oriented tets each.

    Every cell uses the same main diagonal so neighbouring cells conform.
    """
    coords = np.linspace(0.0, size, n + 1)
    zs, ys, xs = np.meshgrid(coords, coords, coords, indexing="ij")
    positions = np.column_stack([xs.ravel(), ys.ravel(), zs.ravel()])

    def vid(i: int, j: int, k: int) -> int:
        return (k * (n + 1) + j) * (n + 1) + i

    axes = np.eye(3, dtype=int)
    faces: List[Tuple[int, ...]] = []
    for k in range(n):
        for j in range(n):
            for i in range(n):
                for perm in permutations(range(3)):
                    corner = np.array([i, j, k])
                    chain = [tuple(corner)]
                    for axis in perm:
                        corner = corner + axes[axis]
                        chain.append(tuple(corner))
                    tet = [vid(*c) for c in chain]
                    if np.linalg.det(axes[list(perm)]) < 0:
                        tet[2], tet[3] = tet[3], tet[2]
                    faces.append(tuple(tet))
    return Mesh.from_facets(3, faces, positions=positions)


def icosphere(subdivisions: int = 1, radius: float = 1.0) -> Mesh:
    """Closed triangulated sphere, outward oriented."""
    t = (1.0 + np.sqrt(5.0)) / 2.0
    verts = [(-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
             (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
             (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1)]
    positions = [np.asarray(v, dtype=float) / np.linalg.norm(v) for v in verts]
    faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
             (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
             (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
             (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    for _ in range(subdivisions):
        cache: Dict[Tuple[int, int], int] = {}

        def midpoint(a: int, b: int) -> int:
            key = (min(a, b), max(a, b))
            if key not in cache:
                p = positions[a] + positions[b]
                positions.append(p / np.linalg.norm(p))
                cache[key] = len(positions) - 1
            return cache[key]

        refined = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            refined += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = refined
    return Mesh.from_facets(2, faces, positions=radius * np.asarray(positions))


# Cube corner (x, y, z) in {0, 1}^3 has id x + 2y + 4z.
CUBE_POSITIONS = np.array([[x, y, z] for z in (0, 1) for y in (0, 1) for x in (0, 1)], dtype=float)

# Cross-shaped net: four faces stacked around the x axis plus two wings.
CUBE_UVS = np.array([
    [1, 0], [2, 0], [1, 1], [2, 1], [1, 2], [2, 2], [1, 3], [2, 3], [1, 4], [2, 4],
    [0, 1], [0, 2], [3, 1], [3, 2],
], dtype=float) / 4.0
CUBE_UV_TO_POSITION = [0, 1, 4, 5, 6, 7, 2, 3, 0, 1, 0, 2, 1, 3]
CUBE_UV_FACES = [
    (0, 1, 3), (0, 3, 2), (2, 3, 5), (2, 5, 4), (4, 5, 7), (4, 7, 6), (6, 7, 9), (6, 9, 8),
    (10, 2, 4), (10, 4, 11), (3, 12, 13), (3, 13, 5),
]


def textured_cube() -> Tuple[Mesh, Mesh, List[List[Tuple[int, int]]]]:
    """
    Unit cube with a single-chart UV net.

    Returns the position mesh, the seam-cut UV mesh (attribute ``uv``) and the
    per-facet corner pairing ``[(uv vertex, position vertex), ...]``.
    """
    position_faces = [tuple(CUBE_UV_TO_POSITION[c] for c in f) for f in CUBE_UV_FACES]
    positions = Mesh.from_facets(2, position_faces, positions=CUBE_POSITIONS)
    uv = Mesh.from_facets(2, CUBE_UV_FACES, vertex_count=len(CUBE_UVS))
    uv.add_vertex_attribute("uv", 2, values=CUBE_UVS)
    corners = [[(c, CUBE_UV_TO_POSITION[c]) for c in f] for f in CUBE_UV_FACES]
    return positions, uv, corners


def seam_patch() -> Tuple[Mesh, Mesh, List[List[Tuple[int, int]]]]:
    """
    Four triangles around a centre vertex with one seam edge.

    Position vertices: corners 0..3 of the unit square and centre 4. The UV
    copy splits corner 0 into uv vertices 0 and 5, so the edge (0, 4) has two
    UV preimages and every other edge has one.
    """
    positions = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.5, 0.5, 0.0]])
    faces = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]
    root = Mesh.from_facets(2, faces, positions=positions)
    uv_faces = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 5, 4)]
    uv_values = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.0, 0.05]])
    child = Mesh.from_facets(2, uv_faces, vertex_count=6)
    child.add_vertex_attribute("uv", 2, values=uv_values)
    to_root = [0, 1, 2, 3, 4, 0]
    corners = [[(c, to_root[c]) for c in f] for f in uv_faces]
    return root, child, corners


def uv_grid(n: int) -> Tuple[Mesh, Mesh, List[List[Tuple[int, int]]]]:
    """Seam-free n x n grid whose UV child is an exact copy of the root."""
    root = square_grid(n)
    planar = root.positions()
    child = Mesh.from_facets(2, [f for _, f in root.facets()], vertex_count=root.vertex_count)
    child.add_vertex_attribute("uv", 2, values=planar)
    corners = [[(v, v) for v in f] for _, f in root.facets()]
    return root, child, corners
