"""Nonnegative matrices, vector (quasi)norms and mixed row/column norms."""
from __future__ import annotations

import numpy as np

from .exponents import Exponent, ExponentLike


class PositiveMatrix:
    """Finite dense matrix with nonnegative finite entries.

    Entries are validated once here; downstream code assumes nonnegativity.
    The underlying array is read-only.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim == 1:
            a = a[np.newaxis, :]
        if a.ndim != 2:
            raise ValueError(f"matrix must be 2-D, got shape {a.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"matrix must have at least one row and column, got {a.shape}")
        if not np.all(np.isfinite(a)):
            j, k = np.argwhere(~np.isfinite(a))[0]
            raise ValueError(f"non-finite entry at ({j + 1}, {k + 1})")
        if np.any(a < 0):
            j, k = np.argwhere(a < 0)[0]
            raise ValueError(f"negative entry {a[j, k]} at ({j + 1}, {k + 1})")
        a.flags.writeable = False
        self._a = a

    @property
    def a(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def m(self) -> int:
        return self._a.shape[0]

    @property
    def n(self) -> int:
        return self._a.shape[1]

    def __array__(self, dtype=None, copy=None):
        return self._a if dtype is None else self._a.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, PositiveMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.shape, self._a.tobytes()))

    def __mul__(self, c):
        return PositiveMatrix(self._a * float(c))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"PositiveMatrix({self._a.tolist()!r})"

    def is_zero(self) -> bool:
        return not np.any(self._a)


def as_positive(A) -> PositiveMatrix:
    return A if isinstance(A, PositiveMatrix) else PositiveMatrix(A)


def vector_norm(x, p: ExponentLike, axis=None) -> float | np.ndarray:
    """``l_p`` (quasi)norm; ``p = inf`` is the max of absolute values.

    The sum is scaled by the largest magnitude to avoid overflow for large
    ``p``. With ``axis`` given, norms are taken along that axis.
    """
    p = Exponent.of(p)
    x = np.abs(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(x)):
        raise ValueError("vector_norm needs finite input")
    if x.size == 0:
        return 0.0 if axis is None else np.zeros(np.delete(x.shape, axis))
    big = np.max(x, axis=axis, keepdims=True)
    if p.is_infinite:
        return np.squeeze(big, axis=axis) if axis is not None else float(big.item())
    safe = np.where(big > 0, big, 1.0)
    pv = p.value
    total = np.sum((x / safe) ** pv, axis=axis, keepdims=True)
    out = np.where(big > 0, big * total ** (1.0 / pv), 0.0)
    return np.squeeze(out, axis=axis) if axis is not None else float(out.item())


def mixed_norm_rows(A, outer: ExponentLike, inner: ExponentLike) -> float:
    """``l_outer`` norm of the vector of ``l_inner`` row norms."""
    a = np.asarray(as_positive(A).a)
    return vector_norm(vector_norm(a, inner, axis=1), outer)


def mixed_norm_cols(A, outer: ExponentLike, inner: ExponentLike) -> float:
    """``l_outer`` norm of the vector of ``l_inner`` column norms."""
    return mixed_norm_rows(transpose(A), outer, inner)


def entrywise_norm(A, p: ExponentLike) -> float:
    """``l_p`` norm of all entries taken together."""
    return vector_norm(as_positive(A).a.ravel(), p)


def transpose(A) -> PositiveMatrix:
    """Adjoint of a real nonnegative matrix, i.e. its transpose."""
    return PositiveMatrix(as_positive(A).a.T)


def basis_vector(n: int, j: int) -> np.ndarray:
    """Unit vector ``e_j`` of length ``n``, with ``j`` 1-based."""
    if not 1 <= j <= n:
        raise IndexError(f"basis index {j} out of range 1..{n}")
    e = np.zeros(n)
    e[j - 1] = 1.0
    return e


def identity(n: int) -> PositiveMatrix:
    return PositiveMatrix(np.eye(n))
