"""
Standard involution frame

Coordinates are numbered from 0. Inside each block of eight, alpha, beta and
gamma flip bit 0, 1 and 2 of the offset, so alpha = (1,2)(3,4)..., beta =
(1,3)(2,4)(5,7)(6,8)... and gamma = (1,5)(2,6)(3,7)(4,8)... in 1-based cycle
notation. On the n/2 orbits of any one of them, chi and mu flip bit 0 and 1
of the orbit index.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.errors import DegreeMismatchError, NotCommutingError
from src.groups.perm_group import PermGroup
from src.groups.permutation import Permutation, commutes, is_fpf_involution
from src.codes.fixed import eta, involution_orbits

logger = logging.getLogger(__name__)

ROLES = ("alpha", "beta", "gamma")
ROLE_BITS = {"alpha": 0, "beta": 1, "gamma": 2}
PAIRS = ("alpha,beta", "alpha,gamma", "beta,gamma")


def xor_involution(n: int, mask: int) -> Permutation:
    """i -> i ^ mask on {0, ..., n-1}"""
    return Permutation._trusted(tuple(i ^ mask for i in range(n)))


@dataclass(frozen=True)
class InvolutionFrame:
    """The commuting involutions alpha, beta, gamma of degree n and chi, mu of degree n/2"""
    n: int
    alpha: Permutation
    beta: Permutation
    gamma: Permutation
    chi: Permutation
    mu: Permutation

    @property
    def half_n(self) -> int:
        return self.n // 2

    def involution(self, role: str) -> Permutation:
        if role not in ROLE_BITS:
            raise ValueError(f"Unknown involution {role!r}; expected one of {ROLES}")
        return getattr(self, role)

    @property
    def klein(self) -> Tuple[Permutation, Permutation]:
        return (self.chi, self.mu)

    def klein_group(self) -> PermGroup:
        return PermGroup(self.half_n, [self.chi, self.mu])

    def elementary_group(self) -> PermGroup:
        return PermGroup(self.n, [self.alpha, self.beta, self.gamma])

    def nontrivial_elements(self) -> List[Permutation]:
        return [xor_involution(self.n, mask) for mask in range(1, 8)]


def standard_frame(n: int) -> InvolutionFrame:
    if n <= 0 or n % 8:
        raise ValueError(f"Frame length must be a positive multiple of 8, got {n}")
    half = n // 2
    return InvolutionFrame(
        n=n,
        alpha=xor_involution(n, 1),
        beta=xor_involution(n, 2),
        gamma=xor_involution(n, 4),
        chi=xor_involution(half, 1),
        mu=xor_involution(half, 2),
    )


def check_frame(frame: InvolutionFrame) -> None:
    """Raise if the frame's defining relations fail"""
    a, b, c = frame.alpha, frame.beta, frame.gamma
    for p, q in ((a, b), (a, c), (b, c)):
        if not commutes(p, q):
            raise NotCommutingError(f"{p} and {q} do not commute")
    elements = PermGroup(frame.n, [a, b, c]).elements()
    if len(elements) != 8:
        raise ValueError(f"<alpha, beta, gamma> has order {len(elements)}, expected 8")
    if not all(is_fpf_involution(g) for g in elements if not g.is_identity()):
        raise ValueError("Some nontrivial element of <alpha, beta, gamma> has a fixed point")
    if eta(b, a) != frame.chi or eta(c, a) != frame.mu:
        raise ValueError("eta(beta, alpha), eta(gamma, alpha) do not give chi, mu")


def parse_pair(text: str) -> Tuple[str, str]:
    """'alpha,beta' -> ('alpha', 'beta')"""
    roles = tuple(part.strip() for part in text.split(","))
    if ",".join(roles) not in PAIRS:
        raise ValueError(f"Unknown pair {text!r}; expected one of {', '.join(PAIRS)}")
    return roles


def lift(omega: Permutation, via: Permutation) -> Permutation:
    """
    An element of the centralizer of <alpha, beta, gamma> whose action on the
    orbits of ``via`` (one of alpha, beta, gamma) is omega

    Args:
        omega: Permutation of degree n/2 commuting with chi and mu
        via: alpha, beta or gamma of a standard frame

    Returns:
        l with eta(l, via) = omega
    """
    n = via.degree
    if omega.degree * 2 != n:
        raise DegreeMismatchError(f"Degree {omega.degree} is not half of {n}")
    half = omega.degree
    if not (commutes(omega, xor_involution(half, 1)) and commutes(omega, xor_involution(half, 2))):
        raise NotCommutingError(f"{omega} does not centralize <chi, mu>")
    smallest = [a for a, _ in involution_orbits(via)]
    images = [0] * n
    for base in range(0, n, 8):
        # block base is the smallest point of orbit base // 2
        y = smallest[omega.images[base // 2]]
        for k in range(8):
            images[base ^ k] = y ^ k
    return Permutation(tuple(images))


def relabeling(first: str, second: str, n: int) -> Permutation:
    """
    Bit permutation inside each block of eight taking the roles
    (first, second, third) to (alpha, beta, gamma)

    For the result rho, conjugate(frame.first, rho) is alpha and
    conjugate(frame.second, rho) is beta.
    """
    if first == second or first not in ROLE_BITS or second not in ROLE_BITS:
        raise ValueError(f"Roles {first!r}, {second!r} are not two distinct involutions")
    third = next(r for r in ROLES if r not in (first, second))
    target: Dict[int, int] = {ROLE_BITS[first]: 0, ROLE_BITS[second]: 1, ROLE_BITS[third]: 2}
    images = []
    for i in range(n):
        offset = i & 7
        moved = sum(1 << target[bit] for bit in range(3) if (offset >> bit) & 1)
        images.append((i & ~7) | moved)
    return Permutation(tuple(images))
