"""Generation-checked rollback handles"""
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Tuple

from ..errors import StaleRollbackError
from ..mesh.journal import Journal


@dataclass
class Rollback:
    """Undo handle for one operation: a journal position plus the post-operation generation."""
    journal: Journal
    mark: int
    generation: int
    applied: bool = False


def rollback(target, rb: Rollback):
    """
    Undo an operation on a Mesh or MultiMesh.

    The target's generation must still be the one the operation produced.
    Restores connectivity, attributes, anchors and the generation counter.
    """
    if rb.applied or target.generation != rb.generation:
        raise StaleRollbackError(
            f"rollback for generation {rb.generation} applied at generation {target.generation}",
            witness=rb.generation)
    rb.journal.unwind_to(rb.mark)
    rb.applied = True
    return target


@contextmanager
def journaled(mesh) -> Iterator[Tuple[Journal, int]]:
    """
    Run mutations under the mesh's journal, attaching a private one if needed.

    Any exception unwinds the mesh to the state at entry.
    """
    own = mesh.journal is None
    if own:
        mesh.journal = Journal()
    journal = mesh.journal
    mark = journal.mark()
    try:
        yield journal, mark
    except BaseException:
        journal.unwind_to(mark)
        raise
    finally:
        if own:
            mesh.journal = None
