"""Dense linear algebra over GF(2)

Vectors and matrix rows are bit-packed into Python integers: bit ``j`` of a
row holds coordinate ``j`` (0-based). Every basis returned by this module is
in reduced row-echelon form with ascending pivot columns, so two bases of the
same space compare equal.
"""

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from src.errors import DegreeMismatchError

WORD_BITS = 64

RowLike = Union["BitVector", str, Sequence[int], int]


def _row_from(value: RowLike, ncols: int) -> int:
    if isinstance(value, BitVector):
        if value.length != ncols:
            raise DegreeMismatchError(f"Row of length {value.length}, expected {ncols}")
        return value.bits
    if isinstance(value, int):
        if value < 0 or value >> ncols:
            raise ValueError(f"Row integer {value} does not fit in {ncols} bits")
        return value
    if isinstance(value, str):
        value = [int(ch) for ch in value.strip()]
    if len(value) != ncols:
        raise DegreeMismatchError(f"Row of length {len(value)}, expected {ncols}")
    bits = 0
    for j, x in enumerate(value):
        if x not in (0, 1):
            raise ValueError(f"Coordinate {j} is {x!r}, not 0 or 1")
        if x:
            bits |= 1 << j
    return bits


def _bits_to_string(bits: int, length: int) -> str:
    return "".join("1" if (bits >> j) & 1 else "0" for j in range(length))


@dataclass(frozen=True, slots=True)
class BitVector:
    """Vector of F2^length"""
    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("BitVector length must be at least 1")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"Bits {self.bits:#x} exceed length {self.length}")

    @classmethod
    def from_bits(cls, values: RowLike, length: int = None) -> "BitVector":
        if length is None:
            if isinstance(values, int):
                raise ValueError("length is required for integer input")
            length = len(values.strip()) if isinstance(values, str) else len(values)
        return cls(length, _row_from(values, length))

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, index: int) -> int:
        if not -self.length <= index < self.length:
            raise IndexError(index)
        return (self.bits >> (index % self.length)) & 1

    def __iter__(self) -> Iterator[int]:
        return (self[j] for j in range(self.length))

    def __add__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise DegreeMismatchError(f"Lengths {self.length} and {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def dot(self, other: "BitVector") -> int:
        if other.length != self.length:
            raise DegreeMismatchError(f"Lengths {self.length} and {other.length}")
        return (self.bits & other.bits).bit_count() & 1

    def support(self) -> List[int]:
        return [j for j in range(self.length) if (self.bits >> j) & 1]

    def to_list(self) -> List[int]:
        return list(self)

    def __str__(self) -> str:
        return _bits_to_string(self.bits, self.length)


@dataclass(frozen=True, slots=True)
class BitMatrix:
    """Matrix over F2 stored as packed rows; 0 rows means the zero subspace"""
    ncols: int
    rows: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.ncols < 0:
            raise ValueError("ncols must be nonnegative")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise DegreeMismatchError(f"Row {r:#x} exceeds {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Iterable[RowLike], ncols: int) -> "BitMatrix":
        return cls(ncols, tuple(_row_from(r, ncols) for r in rows))

    @classmethod
    def empty(cls, ncols: int) -> "BitMatrix":
        return cls(ncols, ())

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(1 << j for j in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def __iter__(self) -> Iterator[BitVector]:
        return (BitVector(self.ncols, r) for r in self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_numpy(self) -> np.ndarray:
        """Unpacked 0/1 array of shape (nrows, ncols)"""
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = (r >> j) & 1
        return out

    def to_strings(self) -> List[str]:
        return [_bits_to_string(r, self.ncols) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def pack_words(rows: Sequence[int], ncols: int) -> np.ndarray:
    """Pack integer rows into a (len(rows), words) uint64 array"""
    words = max(1, -(-ncols // WORD_BITS))
    out = np.zeros((len(rows), words), dtype=np.uint64)
    mask = (1 << WORD_BITS) - 1
    for i, r in enumerate(rows):
        for w in range(words):
            out[i, w] = (r >> (WORD_BITS * w)) & mask
    return out


def unpack_word_row(words: np.ndarray) -> int:
    """Inverse of pack_words for a single row"""
    value = 0
    for w, x in enumerate(words.tolist()):
        value |= int(x) << (WORD_BITS * w)
    return value


def rref_rows(rows: Sequence[int], ncols: int, column_order: Sequence[int] = None) -> Tuple[List[int], List[int]]:
    """
    Reduced row echelon form of integer rows

    Columns are scanned in ``column_order`` (ascending by default). Returns the
    nonzero reduced rows in pivot order and their pivot columns.
    """
    mat = [int(r) for r in rows if r]
    order = range(ncols) if column_order is None else column_order
    pivots: List[int] = []
    r = 0
    for c in order:
        if r >= len(mat):
            break
        bit = 1 << c
        pivot_row = next((i for i in range(r, len(mat)) if mat[i] & bit), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        pv = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i] & bit:
                mat[i] ^= pv
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def rref(M: BitMatrix) -> Tuple[BitMatrix, List[int]]:
    """Reduced row-echelon form and pivot columns (strictly increasing)"""
    rows, pivots = rref_rows(M.rows, M.ncols)
    return BitMatrix(M.ncols, tuple(rows)), pivots


def rank(M: BitMatrix) -> int:
    return len(rref_rows(M.rows, M.ncols)[1])


def transpose(M: BitMatrix) -> BitMatrix:
    cols = []
    for j in range(M.ncols):
        col = 0
        for i, r in enumerate(M.rows):
            if (r >> j) & 1:
                col |= 1 << i
        cols.append(col)
    return BitMatrix(M.nrows, tuple(cols))


def _nullspace_from_rref(rows: Sequence[int], pivots: Sequence[int], ncols: int) -> List[int]:
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, pcol in zip(rows, pivots):
            if (row >> f) & 1:
                v |= 1 << pcol
        basis.append(v)
    return basis


def kernel_basis(M: BitMatrix) -> BitMatrix:
    """Basis of {x : M x^T = 0}, in canonical RREF"""
    rows, pivots = rref_rows(M.rows, M.ncols)
    basis = _nullspace_from_rref(rows, pivots, M.ncols)
    return rref(BitMatrix(M.ncols, tuple(basis)))[0]


def dual_basis(G: BitMatrix, n: int) -> BitMatrix:
    """Basis of the orthogonal complement of the row space of G in F2^n"""
    if G.ncols != n:
        raise DegreeMismatchError(f"Matrix has {G.ncols} columns, expected {n}")
    return kernel_basis(G)


def _check_same_width(A: BitMatrix, B: BitMatrix):
    if A.ncols != B.ncols:
        raise DegreeMismatchError(f"Column counts {A.ncols} and {B.ncols}")


def sum_spaces(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    """Basis of the row space A + B"""
    _check_same_width(A, B)
    return rref(BitMatrix(A.ncols, A.rows + B.rows))[0]


def intersect_spaces(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    """Basis of the intersection of the row spaces, via (A^perp + B^perp)^perp"""
    _check_same_width(A, B)
    n = A.ncols
    return dual_basis(sum_spaces(dual_basis(A, n), dual_basis(B, n)), n)


def reduce_row(rows: Sequence[int], pivots: Sequence[int], v: int) -> int:
    """Reduce v against RREF rows; zero iff v lies in their span"""
    for row, pcol in zip(rows, pivots):
        if (v >> pcol) & 1:
            v ^= row
    return v


def contains(S: BitMatrix, v: BitVector) -> bool:
    """True iff v lies in the row space of S"""
    if v.length != S.ncols:
        raise DegreeMismatchError(f"Vector length {v.length}, matrix has {S.ncols} columns")
    rows, pivots = rref_rows(S.rows, S.ncols)
    return reduce_row(rows, pivots, v.bits) == 0


def span(M: BitMatrix) -> Iterator[int]:
    """All 2^rank vectors of the row space (small ranks only)"""
    rows, _ = rref_rows(M.rows, M.ncols)
    for coeffs in product((0, 1), repeat=len(rows)):
        v = 0
        for c, r in zip(coeffs, rows):
            if c:
                v ^= r
        yield v
