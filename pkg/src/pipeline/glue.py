"""
Chi-fixed refinement and the glue search

Representatives are bucketed by the class of their chi-fixed subcode under
the centralizer of <chi, mu>, then adjusted so that every code in a bucket
has literally the same chi-fixed subcode. Within a bucket every ordered pair
(Y_a, Y_b) is glued as lift_alpha(Y_a) + lift_beta(Y_b^omega), with omega
running over a right transversal of Aut(Y_b) in the centralizer of <chi, mu>
inside Aut(Y_b(chi)).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.codes.distance import min_distance, weight_enumerator
from src.codes.fixed import fixed_subcode, pi_lift
from src.codes.linear_code import LinearCode, code_image, sum_codes
from src.codes.refinement import automorphism_group, canonical_labeling, equivalence
from src.config import config
from src.errors import SearchBudgetExceeded
from src.execution.worker_pool import WorkerPool
from src.groups.permutation import Permutation, inverse
from src.groups.search import right_transversal
from src.pipeline.frame import InvolutionFrame, lift, parse_pair, relabeling
from src.pipeline.orbit_reps import OrbitRepSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdjustedEntry:
    """An orbit representative moved by epsilon so that its chi-fixed subcode is the bucket's"""
    code: LinearCode
    rep_index: int
    epsilon: Permutation


@dataclass
class ChiPartition:
    reps: List[LinearCode] = field(default_factory=list)
    buckets: List[List[AdjustedEntry]] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.reps)

    def entries(self) -> List[AdjustedEntry]:
        return [entry for bucket in self.buckets for entry in bucket]


def refine_by_chi_fixed(reps: OrbitRepSet, frame: InvolutionFrame) -> ChiPartition:
    chi = frame.chi
    klein = frame.klein
    partition = ChiPartition()
    bucket_of: Dict[tuple, int] = {}
    labelings: List[Permutation] = []
    for idx, rep in enumerate(reps):
        E = fixed_subcode(rep.code, chi)
        labeling = canonical_labeling(E, klein)
        i = bucket_of.get(labeling.key)
        if i is None:
            bucket_of[labeling.key] = len(partition.reps)
            partition.reps.append(E)
            partition.buckets.append([AdjustedEntry(rep.code, idx, Permutation.identity(rep.code.n))])
            labelings.append(labeling.labeling)
            continue
        epsilon = labeling.labeling * inverse(labelings[i])
        adjusted = code_image(rep.code, epsilon)
        if fixed_subcode(adjusted, chi) != partition.reps[i]:
            raise RuntimeError(f"Adjuster for representative {idx} misses the chi-fixed subcode of bucket {i}")
        partition.buckets[i].append(AdjustedEntry(adjusted, idx, epsilon))
    logger.info(
        f"Chi-fixed refinement: {len(reps)} representatives in m = {partition.m} buckets "
        f"(sizes {[len(b) for b in partition.buckets]})"
    )
    return partition


@dataclass(frozen=True)
class GlueSurvivor:
    """A glued code meeting the distance target; parents index into its bucket"""
    code: LinearCode
    parents: Tuple[int, int, Permutation]
    bucket: int
    pair_dim: int
    min_distance: int
    pair: Tuple[str, str] = ("alpha", "beta")
    key: Optional[tuple] = field(default=None, compare=False, repr=False)

    @property
    def summary(self) -> str:
        return f"[{self.code.n},{self.code.k},{self.min_distance}]"


@dataclass(frozen=True)
class _GlueItem:
    bucket: int
    a: int
    b: int
    omega: Permutation
    lifted_a: LinearCode
    lifted_b: LinearCode
    beta: Permutation
    target_d: int
    distance_mode: str


@dataclass(frozen=True)
class _GlueOutcome:
    item: _GlueItem
    code: LinearCode
    pair_dim: int
    min_distance: int
    key: Optional[tuple]


def _glue_item(item: _GlueItem) -> Optional[_GlueOutcome]:
    moved = code_image(item.lifted_b, lift(item.omega, item.beta))
    glued = sum_codes([item.lifted_a, moved])
    pair_dim = item.lifted_a.k + moved.k - glued.k
    early = item.target_d if item.target_d > 0 else None
    d = min_distance(glued, item.distance_mode, early_abort_at=early)
    if d < item.target_d:
        return None
    try:
        key = canonical_labeling(glued).key
    except SearchBudgetExceeded:
        key = None
    return _GlueOutcome(item, glued, pair_dim, d, key)


def glue_items(partition: ChiPartition, frame: InvolutionFrame, target_d: int, distance_mode: str = "auto") -> List[_GlueItem]:
    """One work item per (bucket, Y_a, Y_b, omega), in a fixed order"""
    klein = frame.klein
    items = []
    for i, (E, bucket) in enumerate(zip(partition.reps, partition.buckets)):
        G_E = automorphism_group(E, klein)
        lifted_a = [pi_lift(entry.code, frame.alpha) for entry in bucket]
        lifted_b = [pi_lift(entry.code, frame.beta) for entry in bucket]
        for b, entry in enumerate(bucket):
            H = automorphism_group(entry.code, klein)
            transversal = right_transversal(G_E, H)
            logger.debug(f"Bucket {i}, Y_b = {b}: |G_E| = {G_E.order()}, |H| = {H.order()}, {len(transversal)} cosets")
            for a in range(len(bucket)):
                for omega in transversal:
                    items.append(_GlueItem(i, a, b, omega, lifted_a[a], lifted_b[b], frame.beta, target_d, distance_mode))
    return items


def _dedup(outcomes: List[_GlueOutcome]) -> List[_GlueOutcome]:
    """First occurrence of each S_n class, by canonical key or else by explicit equivalence"""
    kept: List[_GlueOutcome] = []
    seen_keys = set()
    unkeyed: List[_GlueOutcome] = []
    for outcome in outcomes:
        if outcome.key is not None:
            if outcome.key in seen_keys:
                continue
            seen_keys.add(outcome.key)
            kept.append(outcome)
            continue
        enumerator = weight_enumerator(outcome.code)
        duplicate = False
        for other in kept + unkeyed:
            if other.code.k != outcome.code.k or weight_enumerator(other.code) != enumerator:
                continue
            if equivalence(outcome.code, other.code) is not None:
                duplicate = True
                break
        if not duplicate:
            unkeyed.append(outcome)
            kept.append(outcome)
    return kept


def glue_search(
    partition: ChiPartition,
    frame: InvolutionFrame,
    target_d: int,
    pair: str = "alpha,beta",
    threads: Optional[int] = None,
    distance_mode: str = "auto",
    stats: Optional[Dict[str, int]] = None,
) -> List[GlueSurvivor]:
    """
    Glue the representatives of each bucket pairwise and keep one code per
    S_n-class with minimum distance at least ``target_d``

    Args:
        partition: Output of refine_by_chi_fixed
        frame: Standard frame of length n
        target_d: Distance threshold; 0 keeps every glued code
        pair: Which two fixed subcodes are glued, e.g. 'beta,gamma'
        threads: Worker processes (default from config)
        stats: Filled with the number of glued and passing codes when given

    Returns:
        Survivors in the coordinates of the chosen pair, ordered by first discovery
    """
    first, second = parse_pair(pair)
    items = glue_items(partition, frame, target_d, distance_mode)
    logger.info(f"Glue search ({first}, {second}): {len(items)} glued codes to test over {partition.m} buckets")
    pool = WorkerPool(threads if threads is not None else config.workers.threads)
    outcomes = [o for o in pool.run(_glue_item, items) if o is not None]
    logger.info(f"Glue search: {len(outcomes)} codes meet d >= {target_d}")
    if stats is not None:
        stats.update(glued=len(items), passed=len(outcomes))

    back = inverse(relabeling(first, second, frame.n))
    survivors = []
    for outcome in _dedup(outcomes):
        item = outcome.item
        code = outcome.code if back.is_identity() else code_image(outcome.code, back)
        survivors.append(
            GlueSurvivor(
                code=code,
                parents=(item.a, item.b, item.omega),
                bucket=item.bucket,
                pair_dim=outcome.pair_dim,
                min_distance=outcome.min_distance,
                pair=(first, second),
                key=outcome.key,
            )
        )
    logger.info(f"Glue search: {len(survivors)} inequivalent survivors")
    return survivors
