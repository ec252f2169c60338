"""Representatives of the centralizer-of-<chi, mu> orbits on candidate codes carrying <chi, mu>"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

from src.codes.linear_code import LinearCode, code_image
from src.groups.involutions import (
    conjugation_orbits,
    conjugator_in_sym,
    involution_class_reps,
    involutions,
    is_free_klein_pair,
    klein_pair_conjugator,
)
from src.groups.perm_group import PermGroup
from src.groups.permutation import Permutation, conjugate
from src.groups.search import centralizer
from src.pipeline.candidates import CandidateLibrary
from src.pipeline.frame import InvolutionFrame

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitRep:
    """code = source^(tau * sigma) with <chi, mu> <= Aut(code)"""
    code: LinearCode
    source: int
    chi_class: int
    mu_class: int
    tau: Permutation
    sigma: Permutation


@dataclass
class OrbitRepSet:
    entries: List[OrbitRep] = field(default_factory=list)
    # (library index, s, [t_1, ..., t_s]) per library code
    class_counts: List[Tuple[int, int, List[int]]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def orbit_reps(library: CandidateLibrary, frame: InvolutionFrame) -> OrbitRepSet:
    """
    For each library code Y:
      1. chi_1..chi_s represent the Aut(Y)-classes of fpf involutions
      2. tau_k conjugates chi_k to chi; Y_k = Y^tau_k
      3. mu_1..mu_t represent the classes, under the centralizer K of chi in
         Aut(Y_k), of fpf involutions mu' in K with <chi, mu'> free
      4. sigma_l centralizes chi and conjugates mu_l to mu; Y_kl = Y_k^sigma_l
    """
    chi, mu = frame.klein
    result = OrbitRepSet()
    for candidate in library:
        Y, aut = candidate.code, candidate.aut
        chi_reps = involution_class_reps(aut, fpf_only=True)
        mu_counts = []
        for k, chi_k in enumerate(chi_reps):
            tau = conjugator_in_sym(chi_k, chi)
            Y_k = code_image(Y, tau)
            aut_k = PermGroup(aut.degree, [conjugate(g, tau) for g in aut.generators])
            K = centralizer(aut_k, PermGroup(aut.degree, [chi]))
            eligible = [g for g in involutions(K, fpf_only=True) if g != chi and is_free_klein_pair(chi, g)]
            mu_reps = [orbit[0] for orbit in conjugation_orbits(eligible, K.generators)]
            mu_counts.append(len(mu_reps))
            for l, mu_l in enumerate(mu_reps):
                sigma = klein_pair_conjugator((chi, mu_l), (chi, mu))
                result.entries.append(
                    OrbitRep(
                        code=code_image(Y_k, sigma),
                        source=candidate.index,
                        chi_class=k,
                        mu_class=l,
                        tau=tau,
                        sigma=sigma,
                    )
                )
        result.class_counts.append((candidate.index, len(chi_reps), mu_counts))
        logger.debug(f"Library code {candidate.index + 1}: s = {len(chi_reps)}, t = {mu_counts}")
    logger.info(f"Orbit representatives: {len(result)} from {len(library)} library codes")
    return result
