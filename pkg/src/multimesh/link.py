"""Multimesh link condition"""
from typing import Sequence

from ..mesh.topology import link_condition
from .multimesh import MultiMesh


def multimesh_link_condition(mm: MultiMesh, node: str, edge: Sequence[int]) -> bool:
    """
    Map the edge to the root, then require the link condition on the root edge
    and, recursively, on every preimage edge in every descendant.
    """
    root_edge = mm.map_up(node, edge)
    return _check(mm, mm.root_id, root_edge)


def _check(mm: MultiMesh, node: str, edge: Sequence[int]) -> bool:
    if not link_condition(mm.nodes[node], edge):
        return False
    for child in mm.children(node):
        for preimage in sorted(mm.maps[child].preimage(edge)):
            if not _check(mm, child, preimage):
                return False
    return True


def failing_nodes(mm: MultiMesh, node: str, edge: Sequence[int]) -> list:
    """(node, edge) pairs where the link condition fails, for diagnostics."""
    out = []
    frontier = [(mm.root_id, tuple(mm.map_up(node, edge)))]
    while frontier:
        n, e = frontier.pop(0)
        if not link_condition(mm.nodes[n], e):
            out.append((n, e))
        for child in mm.children(n):
            frontier.extend((child, tuple(p)) for p in sorted(mm.maps[child].preimage(e)))
    return out
