"""Exact integer matrices.

Entries live in an int64 array while they fit.  Products go through the
overflow-checked kernel; when a product would overflow, the matrix is
promoted to Python integers (numpy object dtype) instead of wrapping.
Pass ``unbounded=False`` to turn that promotion into a hard
:class:`~plateau.errors.MatrixOverflow`.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import InputError, MatrixOverflow


class ExactMatrix:
    __slots__ = ("entries", "unbounded")

    def __init__(self, entries, unbounded: bool = True):
        arr = np.asarray(entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputError("ExactMatrix must be square")
        if arr.dtype != object:
            if not np.issubdtype(arr.dtype, np.integer) and arr.dtype != bool:
                raise InputError(f"non-integer dtype {arr.dtype}")
            arr = arr.astype(np.int64)
        arr.flags.writeable = False
        self.entries = arr
        self.unbounded = unbounded

    @classmethod
    def identity(cls, dim: int) -> "ExactMatrix":
        return cls(np.eye(dim, dtype=np.int64))

    @classmethod
    def ones(cls, dim: int) -> "ExactMatrix":
        return cls(np.ones((dim, dim), dtype=np.int64))

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    @property
    def is_wide(self) -> bool:
        return self.entries.dtype == object

    def __getitem__(self, idx):
        value = self.entries[idx]
        return int(value) if np.ndim(value) == 0 else value

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.dimension == other.dimension and bool(
            np.all(self._as_object() == other._as_object())
        )

    def __repr__(self):
        return f"ExactMatrix(dim={self.dimension}, wide={self.is_wide})"

    def _as_object(self) -> np.ndarray:
        if self.is_wide:
            return self.entries
        return np.array(self.entries.tolist(), dtype=object)

    def _wrap(self, arr: np.ndarray) -> "ExactMatrix":
        return ExactMatrix(arr, unbounded=self.unbounded)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.dimension != other.dimension:
            raise InputError("dimension mismatch")
        if not self.is_wide and not other.is_wide:
            try:
                return self._wrap(kernels.matmul_checked(self.entries, other.entries))
            except OverflowError:
                if not (self.unbounded and other.unbounded):
                    raise MatrixOverflow(
                        f"entries of a {self.dimension}x{self.dimension} product exceed int64"
                    ) from None
        return self._wrap(self._as_object().dot(other._as_object()))

    def _combine(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        if self.dimension != other.dimension:
            raise InputError("dimension mismatch")
        if _small(self) and _small(other):
            return self._wrap(self.entries + sign * other.entries)
        return self._wrap(_narrow(self._as_object() + sign * other._as_object()))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._combine(other, -1)

    def scale(self, c: int) -> "ExactMatrix":
        c = int(c)
        if _small(self) and abs(c) < _HALF_RANGE:
            peak = int(np.abs(self.entries).max(initial=0))
            if peak * abs(c) <= kernels.INT64_MAX:
                return self._wrap(self.entries * c)
        return self._wrap(_narrow(self._as_object() * int(c)))

    def power(self, ell: int) -> "ExactMatrix":
        if ell < 0:
            raise InputError("negative matrix power")
        result = ExactMatrix.identity(self.dimension)
        result.unbounded = self.unbounded
        base = self
        while ell:
            if ell & 1:
                result = result @ base
            ell >>= 1
            if ell:
                base = base @ base
        return result

    def row_sums(self) -> list[int]:
        return [int(sum(row)) for row in self._as_object().tolist()]

    def is_symmetric(self) -> bool:
        return bool(np.all(self.entries == self.entries.T))

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries.tolist()]


_HALF_RANGE = 1 << 62


def _small(m: ExactMatrix) -> bool:
    # int64 sum or difference of two such matrices cannot overflow
    if m.is_wide:
        return False
    return int(np.abs(m.entries).max(initial=0)) < _HALF_RANGE


def _narrow(arr: np.ndarray) -> np.ndarray:
    """Back to int64 when every entry fits, otherwise keep Python integers."""
    flat = arr.ravel().tolist()
    if not flat:
        return arr.astype(np.int64)
    if max(flat) <= kernels.INT64_MAX and min(flat) >= -kernels.INT64_MAX - 1:
        return arr.astype(np.int64)
    return arr
