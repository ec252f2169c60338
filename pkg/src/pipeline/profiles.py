"""Intersection dimensions of fixed subcodes and the table of admissible combinations"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from src.algebra.gf2core import BitMatrix, intersect_spaces
from src.codes.fixed import fixed_subcode
from src.codes.linear_code import LinearCode
from src.codes.refinement import automorphism_group
from src.errors import DegreeMismatchError
from src.execution.worker_pool import WorkerPool
from src.groups.involutions import conjugation_orbits, conjugation_transporters, involutions
from src.groups.perm_group import PermGroup
from src.groups.permutation import Permutation, commutes, conjugate, inverse
from src.groups.search import centralizer
from src.pipeline.candidates import CandidateLibrary
from src.pipeline.frame import InvolutionFrame
from src.pipeline.glue import GlueSurvivor
from src.pipeline.orbit_reps import OrbitRepSet, orbit_reps

logger = logging.getLogger(__name__)

Row = Tuple[int, int, int]


def normalized_row(triple: int, p: int, q: int) -> Row:
    return (triple, min(p, q), max(p, q))


@dataclass(frozen=True)
class IntersectionProfile:
    """Fixed-subcode intersection dimensions for one basis (a, b, c)"""
    triple_dim: int
    pair_dims: Tuple[int, int, int]  # (ab, ac, bc)
    basis: Tuple[Permutation, Permutation, Permutation]

    def rows(self) -> List[Row]:
        """The row seen from each of a, b, c in the first role"""
        ab, ac, bc = self.pair_dims
        t = self.triple_dim
        return [normalized_row(t, ab, ac), normalized_row(t, ab, bc), normalized_row(t, ac, bc)]

    @property
    def dims(self) -> Tuple[int, int, int, int]:
        return (self.triple_dim,) + self.pair_dims


def _sort_key(p: Permutation) -> tuple:
    return p.images


def _members(a: Permutation, b: Permutation, c: Permutation) -> FrozenSet[Permutation]:
    return frozenset((a, b, c, a * b, a * c, b * c, a * b * c))


def _conjugate_set(members: FrozenSet[Permutation], t: Permutation) -> FrozenSet[Permutation]:
    return frozenset(conjugate(g, t) for g in members)


def _set_orbit(members: FrozenSet[Permutation], acting: Sequence[Permutation]) -> Set[FrozenSet[Permutation]]:
    orbit = {members}
    queue = [members]
    for current in queue:
        for t in acting:
            image = _conjugate_set(current, t)
            if image not in orbit:
                orbit.add(image)
                queue.append(image)
    return orbit


def free_elementary_subgroups(aut: PermGroup) -> List[Tuple[Permutation, ...]]:
    """
    One elementary abelian subgroup of order 8 with all seven nontrivial
    elements fixed-point-free per ``aut``-conjugacy class, as a sorted tuple
    of those seven

    A class is taken up at the first involution class it meets, with a the
    representative of that class. Subgroups through a are walked as a
    K_a = C(a) class of b, then a C(a, b) class of c. Two subgroups through a
    are conjugate exactly when one is a K_a-conjugate of the other moved by a
    transporter of one of its class-mates of a back onto a.
    """
    degree = aut.degree
    fpf = involutions(aut, fpf_only=True)
    classes = conjugation_orbits(fpf, aut.generators)
    class_of = {g: i for i, orbit in enumerate(classes) for g in orbit}
    found: List[Tuple[Permutation, ...]] = []
    for i, orbit in enumerate(classes):
        a = orbit[0]
        back = {x: inverse(t) for x, t in conjugation_transporters(a, aut.generators).items()}
        K_a = centralizer(aut, PermGroup(degree, [a]))
        eligible_b = [
            b for b in fpf
            if class_of[b] >= i and b != a and commutes(a, b) and class_of.get(a * b, -1) >= i
        ]
        seen: Set[FrozenSet[Permutation]] = set()
        for b in (o[0] for o in conjugation_orbits(eligible_b, K_a.generators)):
            K_ab = centralizer(K_a, PermGroup(degree, [b]))
            eligible_c = []
            for c in eligible_b:
                if c == b or c == a * b or not commutes(b, c):
                    continue
                members = _members(a, b, c)
                if all(class_of.get(g, -1) >= i for g in members):
                    eligible_c.append(c)
            for c in (o[0] for o in conjugation_orbits(eligible_c, K_ab.generators)):
                members = _members(a, b, c)
                moved = [_conjugate_set(members, back[x]) for x in members if class_of[x] == i]
                if any(m in seen for m in moved):
                    continue
                seen |= _set_orbit(members, K_a.generators)
                found.append(tuple(sorted(members, key=_sort_key)))
    logger.debug(f"{len(found)} classes of free 2^3 subgroups in a group of order {aut.order()}")
    return sorted(found, key=lambda members: tuple(p.images for p in members))


def unordered_bases(members: Sequence[Permutation]) -> Iterable[Tuple[Permutation, Permutation, Permutation]]:
    for a, b, c in combinations(members, 3):
        if a * b != c:
            yield (a, b, c)


def _dim(A: BitMatrix, B: BitMatrix) -> int:
    return intersect_spaces(A, B).nrows


def _subgroup_profiles(work: Tuple[LinearCode, Tuple[Permutation, ...]]) -> List[IntersectionProfile]:
    code, members = work
    fixed: Dict[Permutation, BitMatrix] = {g: fixed_subcode(code, g).gen for g in members}
    profiles = []
    for a, b, c in unordered_bases(members):
        ab = intersect_spaces(fixed[a], fixed[b])
        profiles.append(
            IntersectionProfile(
                triple_dim=_dim(ab, fixed[c]),
                pair_dims=(ab.nrows, _dim(fixed[a], fixed[c]), _dim(fixed[b], fixed[c])),
                basis=(a, b, c),
            )
        )
    return profiles


def intersection_profiles(
    survivor: Union[GlueSurvivor, LinearCode],
    frame: InvolutionFrame,
    threads: Optional[int] = None,
) -> List[IntersectionProfile]:
    """
    Profiles of every unordered basis of every free elementary abelian
    subgroup of order 8 in Aut(survivor); empty when there is none
    """
    code = survivor.code if isinstance(survivor, GlueSurvivor) else survivor
    if code.n != frame.n:
        raise DegreeMismatchError(f"Survivor length {code.n}, frame length {frame.n}")
    aut = automorphism_group(code)
    subgroups = free_elementary_subgroups(aut)
    per_subgroup = WorkerPool(threads).run(_subgroup_profiles, [(code, members) for members in subgroups])
    profiles = [p for batch in per_subgroup for p in batch]
    logger.debug(f"{code}: |Aut| = {aut.order()}, {len(subgroups)} free 2^3 subgroups, {len(profiles)} profiles")
    return profiles


@dataclass(frozen=True)
class CasesTable:
    """Admissible (triple, p, q) rows with p <= q"""
    rows: FrozenSet[Row]

    def admits(self, row: Row) -> bool:
        return normalized_row(*row) in self.rows

    def __len__(self) -> int:
        return len(self.rows)

    def sorted_rows(self) -> List[Row]:
        return sorted(self.rows)


def representative_row(code: LinearCode, frame: InvolutionFrame) -> Row:
    """(dim Y(chi) & Y(mu), dim Y(chi), dim Y(mu)), normalized"""
    fixed_chi = fixed_subcode(code, frame.chi).gen
    fixed_mu = fixed_subcode(code, frame.mu).gen
    return normalized_row(_dim(fixed_chi, fixed_mu), fixed_chi.nrows, fixed_mu.nrows)


def cases_table(
    library: CandidateLibrary, frame: InvolutionFrame, reps: Optional[OrbitRepSet] = None
) -> CasesTable:
    """
    Realizable intersection dimensions of fixed subcodes

    If Y is the projection of C(x) for x in {alpha, beta, gamma}, the other two
    involutions act on Y as chi and mu, so dim C(x) & C(y) = dim Y(chi),
    dim C(x) & C(z) = dim Y(mu) and the triple intersection has dimension
    dim Y(chi) & Y(mu). Every representative contributes its row.
    """
    if reps is None:
        reps = orbit_reps(library, frame) if len(library) else OrbitRepSet()
    rows = frozenset(representative_row(rep.code, frame) for rep in reps)
    logger.info(f"Cases table: {len(rows)} rows from {len(reps)} representatives")
    return CasesTable(rows)
