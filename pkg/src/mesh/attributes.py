"""Growable per-simplex attribute arrays"""
from typing import Any, Optional

import numpy as np


class Attribute:
    """
    Row-per-element numeric array with amortised append.

    Rows past ``len(self)`` are capacity only and never visible.
    """

    def __init__(self, width: int, dtype: Any = np.float64, default: Optional[Any] = None):
        self.width = int(width)
        self.dtype = np.dtype(dtype)
        self.default = np.zeros(self.width, dtype=self.dtype) if default is None else np.asarray(default, dtype=self.dtype).reshape(self.width)
        self._data = np.zeros((8, self.width), dtype=self.dtype)
        self._size = 0

    def __len__(self) -> int:
        return self._size

    @property
    def values(self) -> np.ndarray:
        return self._data[:self._size]

    def append(self, value: Optional[Any] = None) -> int:
        if self._size == len(self._data):
            grown = np.zeros((2 * len(self._data), self.width), dtype=self.dtype)
            grown[:self._size] = self._data[:self._size]
            self._data = grown
        self._data[self._size] = self.default if value is None else np.asarray(value, dtype=self.dtype).reshape(self.width)
        self._size += 1
        return self._size - 1

    def truncate(self, size: int) -> None:
        self._size = size

    def __getitem__(self, index: Any) -> np.ndarray:
        return self._data[:self._size][index].copy()

    def __setitem__(self, index: Any, value: Any) -> None:
        self._data[:self._size][index] = value

    def copy(self) -> "Attribute":
        other = Attribute(self.width, self.dtype, self.default)
        other._data = self._data.copy()
        other._size = self._size
        return other
