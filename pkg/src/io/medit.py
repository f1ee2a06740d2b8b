"""ASCII MEDIT (.mesh) tetrahedral meshes"""
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from ..errors import ParseError, StructuralError
from ..mesh.mesh import Mesh

REGION = "region"

# Sections whose entries are skipped: keyword -> integers per entry
_SKIPPED = {"edges": 3, "corners": 1, "ridges": 1, "requiredvertices": 1, "requirededges": 1}


class MeditDocument(BaseModel):
    """Vertices, tetrahedra and optional triangles, all zero based."""
    vertices: List[List[float]] = Field(default_factory=list)
    vertex_refs: List[int] = Field(default_factory=list)
    tetrahedra: List[List[int]] = Field(default_factory=list)
    tetrahedron_refs: List[int] = Field(default_factory=list)
    triangles: List[List[int]] = Field(default_factory=list)
    triangle_refs: List[int] = Field(default_factory=list)


class _Tokens:
    """Whitespace tokens with their line numbers; '#' starts a comment."""

    def __init__(self, text: str):
        self.items: List[Tuple[str, int]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            for tok in raw.split("#", 1)[0].split():
                self.items.append((tok, number))
        self.pos = 0

    def __iter__(self) -> Iterator[Tuple[str, int]]:
        return self

    def __next__(self) -> Tuple[str, int]:
        if self.pos >= len(self.items):
            raise StopIteration
        self.pos += 1
        return self.items[self.pos - 1]

    def line(self) -> Optional[int]:
        if not self.items:
            return None
        return self.items[min(self.pos, len(self.items) - 1)][1]

    def take(self, kind: type, what: str):
        try:
            tok, number = next(self)
        except StopIteration:
            raise ParseError(f"unexpected end of file reading {what}", line=self.line()) from None
        try:
            return kind(tok)
        except ValueError:
            raise ParseError(f"bad {what} '{tok}'", line=number) from None


def _indices(tokens: _Tokens, count: int, n_vertices: int, what: str) -> Tuple[List[int], int]:
    line = tokens.line()
    ids = [tokens.take(int, what) - 1 for _ in range(count)]
    ref = tokens.take(int, f"{what} reference")
    for i in ids:
        if not 0 <= i < n_vertices:
            raise ParseError(f"{what} vertex {i + 1} out of range (have {n_vertices})", line=line)
    if len(set(ids)) != len(ids):
        raise ParseError(f"{what} repeats a vertex", line=line)
    return ids, ref


def parse_medit(text: str) -> MeditDocument:
    tokens = _Tokens(text)
    doc = MeditDocument()
    dimension = 3
    for tok, number in tokens:
        key = tok.lower()
        if key == "meshversionformatted":
            tokens.take(int, "format version")
        elif key == "dimension":
            dimension = tokens.take(int, "dimension")
            if dimension != 3:
                raise ParseError(f"only 3D meshes are supported, got dimension {dimension}", line=number)
        elif key == "vertices":
            for _ in range(tokens.take(int, "vertex count")):
                doc.vertices.append([tokens.take(float, "coordinate") for _ in range(dimension)])
                doc.vertex_refs.append(tokens.take(int, "vertex reference"))
        elif key == "triangles":
            for _ in range(tokens.take(int, "triangle count")):
                ids, ref = _indices(tokens, 3, len(doc.vertices), "triangle")
                doc.triangles.append(ids)
                doc.triangle_refs.append(ref)
        elif key == "tetrahedra":
            for _ in range(tokens.take(int, "tetrahedron count")):
                ids, ref = _indices(tokens, 4, len(doc.vertices), "tetrahedron")
                doc.tetrahedra.append(ids)
                doc.tetrahedron_refs.append(ref)
        elif key in _SKIPPED:
            for _ in range(tokens.take(int, f"{key} count") * _SKIPPED[key]):
                tokens.take(int, key)
        elif key == "end":
            break
        else:
            raise ParseError(f"unknown section '{tok}'", line=number)
    if not doc.tetrahedra:
        raise ParseError("no tetrahedra")
    return doc


def read_medit(path: Union[str, Path]) -> MeditDocument:
    with open(path, "r", encoding="utf-8") as f:
        return parse_medit(f.read())


def document_mesh(doc: MeditDocument) -> Mesh:
    """Tet mesh with positions and the region tag as an integer facet attribute."""
    mesh = Mesh.from_facets(3, doc.tetrahedra, vertex_count=len(doc.vertices),
                            positions=np.asarray(doc.vertices, dtype=float).reshape(-1, 3))
    mesh.add_facet_attribute(REGION, 1, np.int64, values=np.asarray(doc.tetrahedron_refs).reshape(-1, 1))
    return mesh


def load_medit(path: Union[str, Path]) -> Mesh:
    return document_mesh(read_medit(path))


def medit_text(mesh: Mesh, triangles: Sequence[Sequence[int]] = ()) -> str:
    """MEDIT text of a tet mesh; ``triangles`` are written with reference 0."""
    if mesh.is_empty():
        raise StructuralError("refusing to save an empty mesh")
    if mesh.dimension != 3:
        raise StructuralError(f"MEDIT output needs a 3-mesh, got dimension {mesh.dimension}")
    used = sorted({v for _, f in mesh.facets() for v in f})
    ids = {v: i + 1 for i, v in enumerate(used)}
    values = mesh.positions()
    regions = mesh.facet_attributes.get(REGION)
    out = ["MeshVersionFormatted 1", "", "Dimension 3", "", "Vertices", str(len(used))]
    out.extend(" ".join(f"{float(x):.17g}" for x in values[v]) + " 0" for v in used)
    if triangles:
        out.extend(["", "Triangles", str(len(triangles))])
        out.extend(" ".join(str(ids[v]) for v in t) + " 0" for t in triangles)
    facets = mesh.facets()
    out.extend(["", "Tetrahedra", str(len(facets))])
    for fid, f in facets:
        ref = int(regions[fid][0]) if regions is not None else 0
        out.append(" ".join(str(ids[v]) for v in f) + f" {ref}")
    out.extend(["", "End"])
    return "\n".join(out) + "\n"


def save_medit(mesh: Mesh, path: Union[str, Path], triangles: Sequence[Sequence[int]] = ()) -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(medit_text(mesh, triangles), encoding="utf-8")
    return str(path)
