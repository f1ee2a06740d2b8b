"""Wavefront OBJ reading and writing with per-corner texture coordinates"""
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from ..errors import ParseError, StructuralError
from ..mesh.mesh import Mesh
from ..multimesh.multimesh import MultiMesh

# (position index, texcoord index or None), zero based
Corner = Tuple[int, Optional[int]]


class ObjDocument(BaseModel):
    """Positions, texture coordinates and fan-triangulated faces of an OBJ file."""
    positions: List[List[float]] = Field(default_factory=list, description="3D vertex positions")
    texcoords: List[List[float]] = Field(default_factory=list, description="2D texture coordinates")
    faces: List[List[Corner]] = Field(default_factory=list, description="Triangles as three corners each")
    face_lines: List[int] = Field(default_factory=list, description="Source line of each triangle")

    @property
    def has_texcoords(self) -> bool:
        return bool(self.faces) and all(t is not None for f in self.faces for _, t in f)


def _resolve(token: str, count: int, kind: str, line: int) -> int:
    try:
        index = int(token)
    except ValueError:
        raise ParseError(f"bad {kind} index '{token}'", line=line) from None
    if index == 0:
        raise ParseError(f"{kind} index 0 is not valid", line=line)
    resolved = index - 1 if index > 0 else count + index
    if not 0 <= resolved < count:
        raise ParseError(f"{kind} index {index} out of range (have {count})", line=line)
    return resolved


def _corner(token: str, n_positions: int, n_texcoords: int, line: int) -> Corner:
    # v, v/vt, v/vt/vn or v//vn
    parts = token.split("/")
    if len(parts) > 3 or not parts[0]:
        raise ParseError(f"malformed face corner '{token}'", line=line)
    v = _resolve(parts[0], n_positions, "position", line)
    t = _resolve(parts[1], n_texcoords, "texcoord", line) if len(parts) > 1 and parts[1] else None
    return v, t


def _floats(tokens: Sequence[str], least: int, line: int) -> List[float]:
    if len(tokens) < least:
        raise ParseError(f"expected at least {least} coordinates", line=line)
    try:
        return [float(x) for x in tokens]
    except ValueError:
        raise ParseError(f"bad coordinate in '{' '.join(tokens)}'", line=line) from None


def parse_obj(text: str) -> ObjDocument:
    """Parse OBJ text; polygons are fan triangulated from their first corner."""
    doc = ObjDocument()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        tag = toks[0]
        if tag == "v":
            doc.positions.append(_floats(toks[1:], 3, number)[:3])
        elif tag == "vt":
            doc.texcoords.append(_floats(toks[1:], 2, number)[:2])
        elif tag == "f":
            corners = [_corner(t, len(doc.positions), len(doc.texcoords), number) for t in toks[1:]]
            if len(corners) < 3:
                raise ParseError("face needs at least three corners", line=number)
            if len({v for v, _ in corners}) != len(corners):
                raise ParseError("face repeats a vertex", line=number)
            for i in range(1, len(corners) - 1):
                doc.faces.append([corners[0], corners[i], corners[i + 1]])
                doc.face_lines.append(number)
        # vn, o, g, s, usemtl, mtllib, l: not needed for connectivity
    return doc


def read_obj(path: Union[str, Path]) -> ObjDocument:
    with open(path, "r", encoding="utf-8") as f:
        return parse_obj(f.read())


def document_meshes(doc: ObjDocument, uv: Optional[bool] = None
                    ) -> Tuple[Mesh, Optional[Mesh], Optional[List[List[Tuple[int, int]]]]]:
    """
    Position mesh, UV mesh and corner pairing of a parsed document.

    ``uv=None`` builds the UV mesh when every face has texcoords and fails on
    a partial layout; ``uv=True`` requires them; ``uv=False`` ignores them.
    """
    if not doc.faces:
        raise ParseError("no faces")
    with_uv = [all(t is not None for _, t in f) for f in doc.faces]
    if uv or (uv is None and any(with_uv)):
        for ok, line in zip(with_uv, doc.face_lines):
            if not ok:
                raise ParseError("face has no texture coordinates", line=line)
        build_uv = True
    else:
        build_uv = False
    positions = Mesh.from_facets(2, [[v for v, _ in f] for f in doc.faces], vertex_count=len(doc.positions),
                                 positions=np.asarray(doc.positions, dtype=float).reshape(-1, 3))
    if not build_uv:
        return positions, None, None
    uv_mesh = Mesh.from_facets(2, [[t for _, t in f] for f in doc.faces], vertex_count=len(doc.texcoords))
    uv_mesh.add_vertex_attribute("uv", 2, values=np.asarray(doc.texcoords, dtype=float).reshape(-1, 2))
    corners = [[(t, v) for v, t in f] for f in doc.faces]
    return positions, uv_mesh, corners


def load_obj(path: Union[str, Path], uv: Optional[bool] = None):
    """(position mesh, UV mesh or None, corner pairing or None) of an OBJ file."""
    return document_meshes(read_obj(path), uv)


def _fmt(values: Sequence[float]) -> str:
    return " ".join(f"{float(x):.17g}" for x in values)


def _compact(mesh: Mesh) -> dict:
    """Alive vertices used by facets, renumbered in id order."""
    used = sorted({v for _, f in mesh.facets() for v in f})
    return {v: i for i, v in enumerate(used)}


def obj_text(target: Union[Mesh, MultiMesh], uv_node: Optional[str] = None, attribute: str = "uv") -> str:
    """
    OBJ text of a mesh, or of a multimesh root with the UV child ``uv_node``.

    With a UV child every child facet is written with ``v/vt`` corners taken
    from its containment map; 2D positions get z = 0.
    """
    if isinstance(target, MultiMesh):
        mesh = target.root
        child = target.mesh(uv_node) if uv_node else None
        cmap = target.maps[uv_node] if uv_node else None
    else:
        mesh, child, cmap = target, None, None
    if mesh.is_empty():
        raise StructuralError("refusing to save an empty mesh")
    out: List[str] = []
    pos_ids = _compact(mesh)
    values = mesh.positions()
    for v in pos_ids:
        p = list(values[v]) + [0.0] * (3 - values.shape[1])
        out.append(f"v {_fmt(p)}")
    if child is None:
        for _, f in mesh.facets():
            out.append("f " + " ".join(str(pos_ids[v] + 1) for v in f))
        return "\n".join(out) + "\n"
    uv_ids = _compact(child)
    uv_values = child.vertex_attribute(attribute).values
    for t in uv_ids:
        out.append(f"vt {_fmt(uv_values[t])}")
    for cf, f in child.facets():
        vm = cmap.facet_vertex_map(cf)
        out.append("f " + " ".join(f"{pos_ids[vm[t]] + 1}/{uv_ids[t] + 1}" for t in f))
    return "\n".join(out) + "\n"


def save_obj(target: Union[Mesh, MultiMesh], path: Union[str, Path], uv_node: Optional[str] = None,
             attribute: str = "uv") -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(obj_text(target, uv_node, attribute), encoding="utf-8")
    return str(path)
