"""Binary linear codes"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from src.algebra.gf2core import (
    BitMatrix,
    BitVector,
    RowLike,
    dual_basis,
    reduce_row,
    rref,
    span,
)
from src.errors import DegreeMismatchError
from src.groups.permutation import Permutation, apply_rows


@dataclass(frozen=True)
class LinearCode:
    """
    Subspace of F2^n held by its canonical (RREF, ascending pivots) generator

    Two codes compare equal iff they are the same subspace. ``name`` is a
    label only and takes no part in equality.
    """
    n: int
    gen: BitMatrix
    name: Optional[str] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.gen.ncols != self.n:
            raise DegreeMismatchError(f"Generator has {self.gen.ncols} columns, code length {self.n}")
        if rref(self.gen)[0] != self.gen:
            raise ValueError("Generator matrix is not in canonical RREF; build codes with make_code")

    @property
    def k(self) -> int:
        return self.gen.nrows

    @property
    def rows(self) -> tuple:
        return self.gen.rows

    def pivots(self) -> list:
        # in RREF the pivot of each row is its lowest set bit
        return [(r & -r).bit_length() - 1 for r in self.gen.rows]

    def contains_bits(self, bits: int) -> bool:
        return reduce_row(self.gen.rows, self.pivots(), bits) == 0

    def contains(self, v: BitVector) -> bool:
        if v.length != self.n:
            raise DegreeMismatchError(f"Vector length {v.length}, code length {self.n}")
        return self.contains_bits(v.bits)

    def codewords(self) -> Iterator[int]:
        """All 2^k codewords as packed integers"""
        return span(self.gen)

    def with_name(self, name: Optional[str]) -> "LinearCode":
        return LinearCode(self.n, self.gen, name)

    def __str__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"[{self.n},{self.k}]{label}"


def make_code(rows: Iterable[RowLike], n: int, name: Optional[str] = None) -> LinearCode:
    """Code spanned by ``rows``; equal spans give equal values"""
    matrix = rows if isinstance(rows, BitMatrix) else BitMatrix.from_rows(rows, n)
    if matrix.ncols != n:
        raise DegreeMismatchError(f"Rows have {matrix.ncols} columns, expected {n}")
    return LinearCode(n, rref(matrix)[0], name)


def zero_code(n: int) -> LinearCode:
    return LinearCode(n, BitMatrix.empty(n))


def full_space(n: int) -> LinearCode:
    return LinearCode(n, BitMatrix.identity(n))


def dual(C: LinearCode) -> LinearCode:
    return LinearCode(C.n, dual_basis(C.gen, C.n))


def is_self_orthogonal(C: LinearCode) -> bool:
    rows = C.gen.rows
    return all((a & b).bit_count() % 2 == 0 for i, a in enumerate(rows) for b in rows[i:])


def is_self_dual(C: LinearCode) -> bool:
    return C.n == 2 * C.k and is_self_orthogonal(C)


def code_image(C: LinearCode, sigma: Permutation) -> LinearCode:
    """The code {apply(c, sigma) : c in C}"""
    if sigma.degree != C.n:
        raise DegreeMismatchError(f"Permutation degree {sigma.degree}, code length {C.n}")
    return make_code(apply_rows(C.gen, sigma), C.n, C.name)


def is_automorphism(C: LinearCode, sigma: Permutation) -> bool:
    return code_image(C, sigma) == C


def sum_codes(codes: Sequence[LinearCode]) -> LinearCode:
    n = codes[0].n
    rows = []
    for C in codes:
        if C.n != n:
            raise DegreeMismatchError(f"Code lengths {n} and {C.n}")
        rows.extend(C.gen.rows)
    return make_code(BitMatrix(n, tuple(rows)), n)


def direct_sum(codes: Sequence[LinearCode]) -> LinearCode:
    """Block-diagonal concatenation"""
    rows = []
    offset = 0
    for C in codes:
        rows.extend(r << offset for r in C.gen.rows)
        offset += C.n
    return make_code(BitMatrix(offset, tuple(rows)), offset)
