"""Exact integer matrices and Smith normal form.

The matrix type is a thin immutable wrapper over tuples of Python ints,
so every computation is exact at any size.  The Smith reduction runs on
one of two interchangeable kernels: a compiled int64 kernel with
overflow detection (preferred) and a pure-Python arbitrary-precision
one.  Both implement the same deterministic pivot rule, so results do
not depend on which kernel ran; an int64 overflow silently retries on
the pure kernel.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _snf_py
from .errors import InputError

try:
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None

try:
    from . import _snf_core as _ext
except ImportError:  # pragma: no cover - build without the extension
    _ext = None

#: True when the compiled kernel is importable.
HAVE_COMPILED_KERNEL = _ext is not None and _np is not None


def backend_name() -> str:
    return "compiled" if HAVE_COMPILED_KERNEL else "pure"


class IntegerMatrix:
    """Immutable matrix of Python ints; 0 x n and n x 0 shapes are legal."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(operator.index(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            for row in rows:
                if len(row) != width:
                    raise InputError("ragged matrix data")
        else:
            width = 0
        if cols is not None:
            if rows and width != cols:
                raise InputError(f"expected {cols} columns, found {width}")
            width = cols
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntegerMatrix":
        return cls([[0] * n for _ in range(m)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntegerMatrix":
        columns = [tuple(c) for c in columns]
        if columns:
            m = len(columns[0])
        elif rows is not None:
            m = rows
        else:
            m = 0
        return cls([[c[i] for c in columns] for i in range(m)], cols=len(columns))

    @classmethod
    def column(cls, entries: Sequence[int]) -> "IntegerMatrix":
        return cls([[x] for x in entries], cols=1)

    # -- access ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column_tuple(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._data)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self._data]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    # -- algebra -----------------------------------------------------

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        bt = other.transpose()._data
        return IntegerMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self._data],
            cols=other.cols,
        )

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} + {other.shape}")
        return IntegerMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)],
            cols=self.cols,
        )

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} - {other.shape}")
        return IntegerMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)],
            cols=self.cols,
        )

    def scale(self, c: int) -> "IntegerMatrix":
        return IntegerMatrix([[c * x for x in row] for row in self._data], cols=self.cols)

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise InputError("hstack needs equal row counts")
        return IntegerMatrix(
            [r1 + r2 for r1, r2 in zip(self._data, other._data)],
            cols=self.cols + other.cols,
        )

    def vstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.cols:
            raise InputError("vstack needs equal column counts")
        return IntegerMatrix(self._data + other._data, cols=self.cols)

    def take_rows(self, start: int, stop: int) -> "IntegerMatrix":
        return IntegerMatrix(self._data[start:stop], cols=self.cols)

    def take_columns(self, start: int, stop: int) -> "IntegerMatrix":
        return IntegerMatrix([row[start:stop] for row in self._data], cols=stop - start)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntegerMatrix({[list(r) for r in self._data]!r})"


@dataclass(frozen=True)
class SnfDecomposition:
    """U @ A @ V == D with U, V unimodular and D in Smith form."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _run_kernel(rows_lists, m, n, want_transforms, force_pure):
    """Dispatch to the compiled kernel when possible, else the pure one.

    Returns (diag, U_lists, V_lists, D_lists); U/V are None without
    want_transforms.
    """
    if HAVE_COMPILED_KERNEL and not force_pure and m > 0 and n > 0:
        try:
            a = _np.array(rows_lists, dtype=_np.int64)
        except OverflowError:
            a = None
        if a is not None:
            a = _np.ascontiguousarray(a.reshape(m, n))
            if want_transforms:
                u = _np.eye(m, dtype=_np.int64)
                v = _np.eye(n, dtype=_np.int64)
            else:
                u = v = _np.zeros((0, 0), dtype=_np.int64)
            try:
                diag = _ext.snf_i64(a, u, v, want_transforms)
            except OverflowError:
                pass
            else:
                if want_transforms:
                    return diag, u.tolist(), v.tolist(), a.tolist()
                return diag, None, None, a.tolist()
    work = [list(r) for r in rows_lists]
    diag, u, v = _snf_py.snf(work, m, n, want_transforms)
    return diag, u, v, work


def smith_normal_form(A: IntegerMatrix, *, force_pure: bool = False) -> SnfDecomposition:
    """Full decomposition U @ A @ V == D.

    The diagonal of D is nonnegative with each entry dividing the next;
    determinism follows from the fixed pivot rule of the kernels.
    """
    m, n = A.shape
    diag, u, v, d = _run_kernel(A.to_lists(), m, n, True, force_pure)
    return SnfDecomposition(
        U=IntegerMatrix(u, cols=m),
        D=IntegerMatrix(d, cols=n),
        V=IntegerMatrix(v, cols=n),
    )


def snf_diagonal(A, *, force_pure: bool = False) -> tuple[int, ...]:
    """Nonzero Smith diagonal of A, without transform bookkeeping.

    Accepts an IntegerMatrix, a numpy int array, or a list of rows.  The
    diagonal is orientation-independent, so tall matrices are transposed
    internally to keep the expensive operations on the short axis.
    """
    if isinstance(A, IntegerMatrix):
        rows_lists = A.to_lists()
        m, n = A.shape
    elif _np is not None and isinstance(A, _np.ndarray):
        if A.ndim != 2:
            raise InputError("expected a 2-d array")
        m, n = A.shape
        rows_lists = A.tolist()
    else:
        rows_lists = [list(r) for r in A]
        m = len(rows_lists)
        n = len(rows_lists[0]) if rows_lists else 0
    if m > n:
        rows_lists = [[rows_lists[i][j] for i in range(m)] for j in range(n)]
        m, n = n, m
    diag, _, _, _ = _run_kernel(rows_lists, m, n, False, force_pure)
    return tuple(diag)


def rank(A, *, force_pure: bool = False) -> int:
    return len(snf_diagonal(A, force_pure=force_pure))


def is_unimodular(A: IntegerMatrix) -> bool:
    if A.rows != A.cols:
        return False
    diag = snf_diagonal(A)
    return len(diag) == A.rows and all(d == 1 for d in diag)


def kernel_basis(A: IntegerMatrix) -> IntegerMatrix:
    """Basis of the integer kernel of A, as columns.

    From U @ A @ V == D the kernel is spanned by the columns of V past
    the rank; V being unimodular makes this a basis of the full
    (saturated) kernel lattice.
    """
    dec = smith_normal_form(A)
    r = dec.rank
    return dec.V.take_columns(r, A.cols)


def solve_columns(A: IntegerMatrix, B: IntegerMatrix) -> IntegerMatrix | None:
    """Solve A @ X == B over the integers; None when no solution exists."""
    if A.rows != B.rows:
        raise InputError(f"shape mismatch solving {A.shape} X = {B.shape}")
    dec = smith_normal_form(A)
    r = dec.rank
    diag = dec.diagonal
    y = dec.U @ B
    cols = []
    for c in range(B.cols):
        ycol = y.column_tuple(c)
        xhat = []
        for i in range(A.cols):
            if i < r:
                num = ycol[i]
                if num % diag[i]:
                    return None
                xhat.append(num // diag[i])
            else:
                xhat.append(0)
        for i in range(r, A.rows):
            if ycol[i] != 0:
                return None
        cols.append(xhat)
    X = dec.V @ IntegerMatrix.from_columns(cols, rows=A.cols)
    return X


def lattice_contains(A: IntegerMatrix, B: IntegerMatrix) -> bool:
    """Whether every column of B lies in the column span of A."""
    return solve_columns(A, B) is not None


def same_column_span(A: IntegerMatrix, B: IntegerMatrix) -> bool:
    return lattice_contains(A, B) and lattice_contains(B, A)
