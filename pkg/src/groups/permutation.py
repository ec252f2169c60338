"""Permutations of {0..n-1}

Points are 0-based internally; cycle notation on input and output is 1-based.
``p * q`` applies p first, then q, so vectors and codes carry a right action:
``apply(apply(v, p), q) == apply(v, p * q)``.
"""

import re
from collections import Counter
from dataclasses import dataclass
from math import lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from src.algebra.gf2core import BitMatrix, BitVector
from src.errors import DegreeMismatchError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, slots=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1:
            raise ValueError("Permutation degree must be at least 1")
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"Images {self.images} are not a bijection of 0..{n - 1}")

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> "Permutation":
        """Skip bijection validation for images known to be valid"""
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 1-based cycles"""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            points = [p - 1 for p in cycle]
            for p in points:
                if not 0 <= p < degree:
                    raise ValueError(f"Point {p + 1} outside 1..{degree}")
                if p in seen:
                    raise ValueError(f"Point {p + 1} appears twice")
                seen.add(p)
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def from_image_list(cls, images: Sequence[int]) -> "Permutation":
        """Build from a 1-based image list"""
        return cls(tuple(i - 1 for i in images))

    @classmethod
    def parse(cls, text: str, degree: Optional[int] = None) -> "Permutation":
        """
        Parse cycle notation ``(1,2)(3,4)`` or a 1-based image list ``[2,1,4,3]``

        Cycle notation needs ``degree``; an image list fixes its own.
        """
        text = text.strip()
        if text.startswith("["):
            body = text.strip("[]").replace(",", " ").split()
            perm = cls.from_image_list([int(x) for x in body])
            if degree is not None and perm.degree != degree:
                raise DegreeMismatchError(f"Image list has degree {perm.degree}, expected {degree}")
            return perm
        if degree is None:
            raise ValueError("Cycle notation needs an explicit degree")
        if _CYCLE_RE.sub("", text).strip():
            raise ValueError(f"Malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            points = body.replace(",", " ").split()
            if points:
                cycles.append([int(x) for x in points])
        return cls.from_cycles(cycles, degree)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """0-based cycles of length > 1, each starting at its smallest point, ordered by it"""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            p = self.images[start]
            while p != start:
                cycle.append(p)
                seen[p] = True
                p = self.images[p]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def is_involution(self) -> bool:
        return not self.is_identity() and all(self.images[p] == i for i, p in enumerate(self.images))

    def moved_points(self) -> List[int]:
        return [i for i, p in enumerate(self.images) if i != p]

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self}, degree={self.degree})"


def _check_degrees(p: Permutation, q: Permutation):
    if p.degree != q.degree:
        raise DegreeMismatchError(f"Degrees {p.degree} and {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """p then q"""
    _check_degrees(p, q)
    qi = q.images
    return Permutation._trusted(tuple(qi[x] for x in p.images))


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.degree
    for i, x in enumerate(p.images):
        out[x] = i
    return Permutation._trusted(tuple(out))


def conjugate(p: Permutation, t: Permutation) -> Permutation:
    """t^-1 p t, which sends t(i) to t(p(i))"""
    _check_degrees(p, t)
    out = [0] * p.degree
    for i, x in enumerate(p.images):
        out[t.images[i]] = t.images[x]
    return Permutation._trusted(tuple(out))


def commutes(p: Permutation, q: Permutation) -> bool:
    _check_degrees(p, q)
    return all(q.images[x] == p.images[y] for x, y in zip(p.images, q.images))


def cycle_type(sigma: Permutation) -> Counter:
    """Multiset of cycle lengths, fixed points included"""
    lengths = Counter(len(c) for c in sigma.cycles())
    fixed = sigma.degree - sum(k * v for k, v in lengths.items())
    if fixed:
        lengths[1] = fixed
    return lengths


def is_fixed_point_free(sigma: Permutation) -> bool:
    return all(i != p for i, p in enumerate(sigma.images))


def is_fpf_involution(sigma: Permutation) -> bool:
    return is_fixed_point_free(sigma) and sigma.is_involution()


def permute_bits(bits: int, sigma: Permutation) -> int:
    """Move coordinate j to sigma(j)"""
    out = 0
    images = sigma.images
    while bits:
        low = bits & -bits
        out |= 1 << images[low.bit_length() - 1]
        bits ^= low
    return out


def apply(v: BitVector, sigma: Permutation) -> BitVector:
    """result[i] = v[sigma^-1(i)]"""
    if v.length != sigma.degree:
        raise DegreeMismatchError(f"Vector length {v.length}, permutation degree {sigma.degree}")
    return BitVector(v.length, permute_bits(v.bits, sigma))


def apply_rows(M: BitMatrix, sigma: Permutation) -> BitMatrix:
    if M.ncols != sigma.degree:
        raise DegreeMismatchError(f"Matrix has {M.ncols} columns, permutation degree {sigma.degree}")
    return BitMatrix(M.ncols, tuple(permute_bits(r, sigma) for r in M.rows))
