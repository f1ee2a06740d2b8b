"""Mesh and multimesh file formats"""
from .archive import MAGIC, VERSION, archive_bytes, load_archive, parse_archive, save_archive
from .medit import MeditDocument, document_mesh, load_medit, medit_text, parse_medit, read_medit, save_medit
from .obj import ObjDocument, document_meshes, load_obj, obj_text, parse_obj, read_obj, save_obj

__all__ = [
    "MAGIC", "VERSION", "archive_bytes", "load_archive", "parse_archive", "save_archive",
    "MeditDocument", "document_mesh", "load_medit", "medit_text", "parse_medit", "read_medit", "save_medit",
    "ObjDocument", "document_meshes", "load_obj", "obj_text", "parse_obj", "read_obj", "save_obj",
]
