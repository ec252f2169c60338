"""Fixed subcodes of involutions and the projections between lengths n and n/2"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.algebra.gf2core import BitMatrix, kernel_basis, transpose
from src.codes.linear_code import LinearCode, dual, is_self_dual, make_code
from src.errors import DegreeMismatchError, NotAnInvolutionError, NotCommutingError
from src.groups.permutation import Permutation, commutes, is_fpf_involution, permute_bits


def _check_degree(C: LinearCode, sigma: Permutation):
    if sigma.degree != C.n:
        raise DegreeMismatchError(f"Permutation degree {sigma.degree}, code length {C.n}")


def _check_fpf_involution(sigma: Permutation):
    if not is_fpf_involution(sigma):
        raise NotAnInvolutionError(f"{sigma} is not a fixed-point-free involution")


def fixed_subcode(C: LinearCode, sigma: Permutation) -> LinearCode:
    """{c in C : apply(c, sigma) = c}"""
    _check_degree(C, sigma)
    rows = C.rows
    if not rows:
        return C
    # coefficient vectors a with sum a_i (g_i + g_i^sigma) = 0
    moved = BitMatrix(C.n, tuple(r ^ permute_bits(r, sigma) for r in rows))
    coefficients = kernel_basis(transpose(moved))
    fixed = []
    for a in coefficients.rows:
        word = 0
        for i, r in enumerate(rows):
            if (a >> i) & 1:
                word ^= r
        fixed.append(word)
    return make_code(BitMatrix(C.n, tuple(fixed)), C.n)


def image_of_one_plus(C: LinearCode, sigma: Permutation) -> LinearCode:
    """{c + c^sigma : c in C}"""
    _check_degree(C, sigma)
    return make_code(BitMatrix(C.n, tuple(r ^ permute_bits(r, sigma) for r in C.rows)), C.n)


def involution_orbits(sigma: Permutation) -> List[Tuple[int, int]]:
    """Orbits (smaller, larger) of a fixed-point-free involution, ascending"""
    _check_fpf_involution(sigma)
    return [(i, p) for i, p in enumerate(sigma.images) if i < p]


def orbit_index(sigma: Permutation) -> Dict[int, int]:
    index = {}
    for j, (a, b) in enumerate(involution_orbits(sigma)):
        index[a] = j
        index[b] = j
    return index


def pi_project(C_fixed: LinearCode, sigma: Permutation) -> LinearCode:
    """Keep the smaller coordinate of every sigma-orbit"""
    _check_degree(C_fixed, sigma)
    orbits = involution_orbits(sigma)
    rows = []
    for r in C_fixed.rows:
        if permute_bits(r, sigma) != r:
            raise ValueError(f"Generator of {C_fixed} is not fixed by {sigma}")
        rows.append(sum(1 << j for j, (a, _) in enumerate(orbits) if (r >> a) & 1))
    return make_code(BitMatrix(len(orbits), tuple(rows)), len(orbits))


def lift_bits(bits: int, orbits: List[Tuple[int, int]]) -> int:
    out = 0
    for j, (a, b) in enumerate(orbits):
        if (bits >> j) & 1:
            out |= (1 << a) | (1 << b)
    return out


def pi_lift(D: LinearCode, sigma: Permutation) -> LinearCode:
    """Inverse of pi_project: repeat each coordinate on both points of its orbit"""
    orbits = involution_orbits(sigma)
    if D.n != len(orbits):
        raise DegreeMismatchError(f"Code length {D.n}, expected {len(orbits)} orbits")
    return make_code(BitMatrix(sigma.degree, tuple(lift_bits(r, orbits) for r in D.rows)), sigma.degree)


def eta(rho: Permutation, sigma: Permutation) -> Permutation:
    """The permutation rho induces on the sigma-orbits"""
    if rho.degree != sigma.degree:
        raise DegreeMismatchError(f"Degrees {rho.degree} and {sigma.degree}")
    index = orbit_index(sigma)
    if not commutes(rho, sigma):
        raise NotCommutingError(f"{rho} does not centralize {sigma}")
    orbits = involution_orbits(sigma)
    return Permutation(tuple(index[rho.images[a]] for a, _ in orbits))


@dataclass(frozen=True)
class FixedCodeStructure:
    """Dimensions tying C(sigma) to the image of 1 + sigma for a self-dual C"""
    fixed_dim: int
    image_dim: int
    projection_self_dual: bool
    duality_holds: bool


def fixed_code_structure(C: LinearCode, sigma: Permutation) -> FixedCodeStructure:
    """
    For self-dual C and an fpf involution sigma in Aut(C), pi(C(sigma)) and
    pi(Im(1 + sigma)) are dual to each other in F2^(n/2); pi(C(sigma)) is
    self-dual exactly when dim C(sigma) = n/4.
    """
    _check_fpf_involution(sigma)
    fixed = fixed_subcode(C, sigma)
    image = image_of_one_plus(C, sigma)
    projected = pi_project(fixed, sigma)
    return FixedCodeStructure(
        fixed_dim=fixed.k,
        image_dim=image.k,
        projection_self_dual=is_self_dual(projected),
        duality_holds=dual(projected) == pi_project(image, sigma),
    )
