"""
Binary multimesh archive.

All integers are little endian. Strings are a u32 byte length followed by
UTF-8 bytes.

    header   b"MMSH" | u32 version | u32 node count | u64 multimesh generation
    node     str id | str parent id ("" for the root) | u32 dimension | u64 mesh generation
             u64 vertex ids | u8 alive flag per vertex id
             u64 facet ids  | i64 x (dimension + 1) per facet id, -1 rows for deleted facets
             u32 vertex attribute count | attribute ...
             u32 facet attribute count  | attribute ...
             anchors (every node but the root)
    attribute
             str name | str numpy dtype | u32 width | default row bytes | one row of bytes per id
    anchors  u64 count, then per anchor in child facet order:
             i64 child facet | i64 x (k + 1) child dart | i64 parent facet | i64 x (parent dim + 1) parent dart

Nodes are written in preorder so every parent precedes its children.
"""
import struct
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np

from ..errors import ArchiveVersionError, ParseError, StructuralError
from ..mesh.attributes import Attribute
from ..mesh.dart import Dart
from ..mesh.mesh import Mesh
from ..multimesh.containment import Anchor, ContainmentMap
from ..multimesh.multimesh import MultiMesh

MAGIC = b"MMSH"
VERSION = 1


def _le(dtype) -> np.dtype:
    return np.dtype(dtype).newbyteorder("<")


class _Writer:
    def __init__(self):
        self.parts: List[bytes] = []

    def pack(self, fmt: str, *values) -> None:
        self.parts.append(struct.pack("<" + fmt, *values))

    def string(self, text: str) -> None:
        data = text.encode("utf-8")
        self.pack("I", len(data))
        self.parts.append(data)

    def array(self, values: np.ndarray, dtype) -> None:
        self.parts.append(np.ascontiguousarray(values, dtype=_le(dtype)).tobytes())

    def attribute(self, name: str, attr: Attribute) -> None:
        self.string(name)
        self.string(_le(attr.dtype).str)
        self.pack("I", attr.width)
        self.array(attr.default, attr.dtype)
        self.array(attr.values, attr.dtype)

    def getvalue(self) -> bytes:
        return b"".join(self.parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def unpack(self, fmt: str) -> Tuple:
        size = struct.calcsize("<" + fmt)
        if self.pos + size > len(self.data):
            raise ParseError(f"archive truncated at byte {self.pos}")
        values = struct.unpack_from("<" + fmt, self.data, self.pos)
        self.pos += size
        return values

    def string(self) -> str:
        (n,) = self.unpack("I")
        raw = self.take(n)
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError(f"invalid string at byte {self.pos - n}") from None

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise ParseError(f"archive truncated at byte {self.pos}")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def array(self, count: int, dtype, shape=None) -> np.ndarray:
        dt = _le(dtype)
        values = np.frombuffer(self.take(count * dt.itemsize), dtype=dt).astype(dt.newbyteorder("="))
        return values.reshape(shape) if shape is not None else values

    def attribute(self) -> Tuple[str, np.dtype, int, np.ndarray]:
        name = self.string()
        try:
            dtype = np.dtype(self.string())
        except TypeError:
            raise ParseError(f"unknown dtype for attribute '{name}'") from None
        (width,) = self.unpack("I")
        default = self.array(width, dtype)
        return name, dtype, width, default


def _write_mesh(w: _Writer, mesh: Mesh) -> None:
    d = mesh.dimension
    w.pack("IQ", d, mesh.generation)
    w.pack("Q", mesh.vertex_count)
    w.array(np.array([mesh.is_vertex_alive(v) for v in range(mesh.vertex_count)], dtype=np.uint8), np.uint8)
    rows = np.full((mesh.facet_capacity, d + 1), -1, dtype=np.int64)
    for fid, f in mesh.facets():
        rows[fid] = f
    w.pack("Q", mesh.facet_capacity)
    w.array(rows, np.int64)
    for attributes in (mesh.vertex_attributes, mesh.facet_attributes):
        w.pack("I", len(attributes))
        for name, attr in sorted(attributes.items()):
            w.attribute(name, attr)


def _read_mesh(r: _Reader) -> Mesh:
    d, generation = r.unpack("IQ")
    if d > 3:
        raise ParseError(f"unsupported mesh dimension {d}")
    (n_vertices,) = r.unpack("Q")
    alive = r.array(n_vertices, np.uint8)
    (n_facets,) = r.unpack("Q")
    rows = r.array(n_facets * (d + 1), np.int64, (n_facets, d + 1))
    facets = [None if row[0] < 0 else tuple(int(v) for v in row) for row in rows]
    try:
        mesh = Mesh.restore(d, facets, alive, generation)
    except StructuralError as exc:
        raise ParseError(f"invalid mesh in archive: {exc}") from None
    for add, count in ((mesh.add_vertex_attribute, n_vertices), (mesh.add_facet_attribute, n_facets)):
        (n_attrs,) = r.unpack("I")
        for _ in range(n_attrs):
            name, dtype, width, default = r.attribute()
            values = r.array(count * width, dtype, (count, width))
            add(name, width, dtype, values=values, default=default)
    return mesh


def _write_anchors(w: _Writer, cm: ContainmentMap) -> None:
    w.pack("Q", len(cm.anchors))
    for cf in sorted(cm.anchors):
        a = cm.anchors[cf]
        w.pack("q", a.child_dart.facet)
        w.array(np.asarray(a.child_dart.vertices), np.int64)
        w.pack("q", a.parent_dart.facet)
        w.array(np.asarray(a.parent_dart.vertices), np.int64)


def _read_anchors(r: _Reader, cm: ContainmentMap) -> None:
    (count,) = r.unpack("Q")
    k, dp = cm.child.dimension, cm.parent.dimension
    for _ in range(count):
        (cf,) = r.unpack("q")
        child = tuple(int(v) for v in r.array(k + 1, np.int64))
        (pf,) = r.unpack("q")
        parent = tuple(int(v) for v in r.array(dp + 1, np.int64))
        anchor = Anchor(Dart(child, cf), Dart(parent, pf))
        if not cm.is_valid_anchor(cf, anchor):
            raise ParseError(f"anchor of child facet {cf} does not match the stored meshes")
        cm.set_anchor(cf, anchor)


def archive_bytes(mm: MultiMesh) -> bytes:
    if mm.root.is_empty():
        raise StructuralError("refusing to save an empty mesh")
    order = mm.preorder()
    w = _Writer()
    w.parts.append(MAGIC)
    w.pack("IIQ", VERSION, len(order), mm.generation)
    for node in order:
        w.string(node)
        w.string(mm.parent[node] or "")
        _write_mesh(w, mm.nodes[node])
        if mm.parent[node] is not None:
            _write_anchors(w, mm.maps[node])
    return w.getvalue()


def parse_archive(data: bytes) -> MultiMesh:
    r = _Reader(data)
    if r.take(len(MAGIC)) != MAGIC:
        raise ParseError("not a multimesh archive (bad magic)")
    version, n_nodes, generation = r.unpack("IIQ")
    if version != VERSION:
        raise ArchiveVersionError(f"archive version {version}, this build reads version {VERSION}",
                                  witness=version)
    mm = None
    meshes: Dict[str, Mesh] = {}
    for _ in range(n_nodes):
        node, parent = r.string(), r.string()
        mesh = _read_mesh(r)
        meshes[node] = mesh
        if not parent:
            if mm is not None:
                raise ParseError(f"second root node '{node}'")
            mm = MultiMesh(mesh, node)
            continue
        if mm is None or parent not in meshes:
            raise ParseError(f"node '{node}' precedes its parent '{parent}'")
        cm = ContainmentMap(meshes[parent], mesh)
        _read_anchors(r, cm)
        mm.add_child(parent, node, cm)
    if mm is None:
        raise ParseError("archive holds no nodes")
    if r.pos != len(data):
        raise ParseError(f"{len(data) - r.pos} trailing bytes after the last node")
    mm.generation = generation
    return mm


def save_archive(mm: MultiMesh, path: Union[str, Path]) -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(archive_bytes(mm))
    return str(path)


def load_archive(path: Union[str, Path]) -> MultiMesh:
    return parse_archive(Path(path).read_bytes())
