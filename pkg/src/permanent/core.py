"""Matrix container, element-kind taxonomy, and result types.

Every algorithm in this package consumes a :class:`Matrix` and produces a
:class:`PermanentResult`.  A matrix carries exactly one
:class:`ElementKind`, which fixes the arithmetic used by the kernels and
the type of the result:

* ``INT64`` in, integer out (exact, with 64-bit overflow detection),
* ``FLOAT64`` in, float out,
* ``COMPLEX128`` in, complex out.

Matrices are immutable after construction and safe to share across
threads.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)

Scalar = Union[int, float, complex]


class ElementKind(enum.Enum):
    """The closed set of element types a Matrix may carry."""

    INT64 = "int64"
    FLOAT64 = "float64"
    COMPLEX128 = "complex128"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(self.value)


_DTYPE_CHAR_TO_KIND = {
    "b": ElementKind.INT64,
    "i": ElementKind.INT64,
    "u": ElementKind.INT64,
    "f": ElementKind.FLOAT64,
    "c": ElementKind.COMPLEX128,
}


@dataclass(frozen=True)
class Matrix:
    """An immutable m-by-n matrix of one element kind, stored row-major."""

    m: int
    n: int
    kind: ElementKind
    data: np.ndarray

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"matrix must have m >= 1 and n >= 1, got {self.m}x{self.n}")
        if self.data.shape != (self.m, self.n):
            raise ValueError(f"data shape {self.data.shape} != ({self.m}, {self.n})")

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i, j].item()

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def tolist(self) -> list:
        return self.data.tolist()


@dataclass(frozen=True)
class PermanentResult:
    """A computed permanent.

    ``overflowed`` is only meaningful on the integer path: it is set when
    any 64-bit intermediate left the signed range, in which case ``value``
    is unreliable.  Overflow is detected with checked arithmetic, never
    silently wrapped.
    """

    value: Scalar
    overflowed: bool = False


def _kind_of_elements(elements) -> ElementKind:
    has_float = False
    has_complex = False
    has_int = False
    for e in elements:
        if isinstance(e, (bool, int, np.integer)):
            has_int = True
        elif isinstance(e, (float, np.floating)):
            has_float = True
        elif isinstance(e, (complex, np.complexfloating)):
            has_complex = True
        else:
            raise TypeError(f"unsupported element {e!r} of type {type(e).__name__}")
    present = sum([has_int, has_float, has_complex])
    if present != 1:
        raise TypeError("elements mix distinct kinds; a matrix carries exactly one of "
                        "int64, float64, complex128")
    if has_int:
        return ElementKind.INT64
    if has_float:
        return ElementKind.FLOAT64
    return ElementKind.COMPLEX128


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def make_matrix(m: int, n: int, elements: Sequence[Scalar]) -> Matrix:
    """Build an m-by-n Matrix from a flat row-major element sequence.

    Element (i, j) is taken from ``elements[i*n + j]``.  All elements must
    share one kind; integers must fit in a signed 64-bit word.
    """
    if m < 1 or n < 1:
        raise ValueError(f"matrix must have m >= 1 and n >= 1, got {m}x{n}")
    elements = list(elements)
    if len(elements) != m * n:
        raise ValueError(f"expected {m * n} elements for a {m}x{n} matrix, got {len(elements)}")
    kind = _kind_of_elements(elements)
    if kind is ElementKind.INT64:
        for e in elements:
            if not (INT64_MIN <= int(e) <= INT64_MAX):
                raise TypeError(f"integer element {e} does not fit in int64")
    arr = np.array(elements, dtype=kind.dtype).reshape(m, n)
    return Matrix(m, n, kind, _freeze(arr))


def as_matrix(a) -> Matrix:
    """Coerce a Matrix, 2-D ndarray, or nested sequence into a Matrix.

    dtype decides the kind: integer/bool arrays map to int64, floats to
    float64, complex to complex128.  The input is never mutated.
    """
    if isinstance(a, Matrix):
        return a
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise TypeError(f"expected a 2-dimensional array, got ndim={arr.ndim}")
    if arr.size == 0:
        raise ValueError("matrix must be non-empty")
    if arr.dtype.kind == "O":
        # Python objects: route through make_matrix for per-element checks.
        return make_matrix(arr.shape[0], arr.shape[1], list(arr.ravel()))
    try:
        kind = _DTYPE_CHAR_TO_KIND[arr.dtype.kind]
    except KeyError:
        raise TypeError(f"unsupported dtype {arr.dtype}") from None
    if arr.dtype.kind == "u" and arr.size and arr.max() > INT64_MAX:
        raise TypeError("unsigned values exceed the int64 range")
    out = arr.astype(kind.dtype, copy=True)
    return Matrix(out.shape[0], out.shape[1], kind, _freeze(out))


def transpose(a: Matrix) -> Matrix:
    """Return the transpose; element (j, i) of the result equals a(i, j)."""
    return Matrix(a.n, a.m, a.kind, _freeze(a.data.T.copy()))
