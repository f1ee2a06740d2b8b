"""Undo journal shared by meshes and containment maps during a transaction"""
from typing import Callable, List


class Journal:
    """Ordered list of undo closures. Unwinding replays them newest first."""

    def __init__(self):
        self._undo: List[Callable[[], None]] = []

    def record(self, undo: Callable[[], None]) -> None:
        self._undo.append(undo)

    def mark(self) -> int:
        return len(self._undo)

    def unwind_to(self, mark: int) -> None:
        while len(self._undo) > mark:
            self._undo.pop()()

    def unwind(self) -> None:
        self.unwind_to(0)

    def __len__(self) -> int:
        return len(self._undo)
