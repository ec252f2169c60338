"""Candidate library: half-length codes whose Aut contains a free Klein four-group"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from src.codes.distance import min_distance
from src.codes.fixed import fixed_code_structure
from src.codes.linear_code import LinearCode, code_image, is_self_dual
from src.codes.refinement import automorphism_group
from src.errors import DegreeMismatchError
from src.groups.involutions import involution_class_reps, involutions, is_free_klein_pair, klein_pair_conjugator
from src.groups.perm_group import PermGroup
from src.groups.permutation import Permutation
from src.groups.search import centralizer
from src.pipeline.frame import InvolutionFrame

logger = logging.getLogger(__name__)


@dataclass
class Candidate:
    """A library code with its automorphism group and a witness t: <chi, mu> <= Aut(code^t)"""
    index: int
    code: LinearCode
    aut: PermGroup
    witness: Permutation
    min_distance: int


@dataclass
class CandidateLibrary:
    half_n: int
    codes: List[Candidate] = field(default_factory=list)
    rejected: Dict[str, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self):
        return iter(self.codes)


def free_klein_pair_in(aut: PermGroup) -> Optional[tuple]:
    """Some (a, b) generating a fixed-point-free Klein four-subgroup of ``aut``, or None"""
    for a in involution_class_reps(aut, fpf_only=True):
        commuting = centralizer(aut, PermGroup(aut.degree, [a]))
        for b in involutions(commuting, fpf_only=True):
            if b != a and is_free_klein_pair(a, b):
                return (a, b)
    return None


def _structure_warnings(code: LinearCode, witness: Permutation, frame: InvolutionFrame) -> int:
    """Count involutions of the frame's Klein group violating the fixed-code duality"""
    image = code_image(code, witness)
    failures = 0
    for sigma in (frame.chi, frame.mu, frame.chi * frame.mu):
        if not fixed_code_structure(image, sigma).duality_holds:
            failures += 1
    return failures


def filter_candidates(
    db: Sequence[LinearCode],
    frame: InvolutionFrame,
    half_target_d: int,
    distance_mode: str = "auto",
) -> CandidateLibrary:
    """
    Keep the self-dual codes of length n/2 with minimum distance at least
    ``half_target_d`` whose automorphism group contains a conjugate of <chi, mu>

    Args:
        db: Codes of length n/2
        frame: Standard frame of length n
        half_target_d: Minimum distance required of the half-length codes

    Returns:
        CandidateLibrary with one conjugation witness per kept code
    """
    half = frame.half_n
    for i, code in enumerate(db):
        if code.n != half:
            raise DegreeMismatchError(f"Database entry {i + 1} has length {code.n}, expected {half}")

    library = CandidateLibrary(half_n=half)
    rejected: Counter = Counter()
    for i, code in enumerate(db):
        if not is_self_dual(code):
            rejected["not self-dual"] += 1
            continue
        d = min_distance(code, distance_mode)
        if d < half_target_d:
            rejected["distance"] += 1
            continue
        aut = automorphism_group(code)
        pair = free_klein_pair_in(aut)
        if pair is None:
            rejected["no free Klein subgroup"] += 1
            logger.debug(f"Entry {i + 1} {code}: |Aut| = {aut.order()}, no free Klein four-subgroup")
            continue
        witness = klein_pair_conjugator(pair, frame.klein)
        if _structure_warnings(code, witness, frame):
            logger.warning(f"Entry {i + 1} {code}: fixed subcodes break the projection duality")
        library.codes.append(Candidate(index=i, code=code, aut=aut, witness=witness, min_distance=d))
        logger.debug(f"Entry {i + 1} {code}: kept, |Aut| = {aut.order()}")

    library.rejected = dict(rejected)
    logger.info(f"Candidate library: {len(library)} of {len(db)} codes kept")
    return library

