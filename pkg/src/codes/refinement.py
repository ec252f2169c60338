"""
Automorphism groups, canonical forms and equivalence of binary codes

A code is searched as an incidence structure: its coordinates against the
supports of its lightest codewords (the lowest weights whose words span the
code). Optional distinguished permutations ride along, which restricts every
result to their centralizer. The search is a partition backtrack:

* color refinement to an equitable coloring, signatures sorted with numpy
  so colors never depend on the input labeling;
* individualization of each point of the first non-singleton cell;
* pruning by orbits of the automorphisms found so far, by node invariants
  against the first and the best path, and a jump back to the common
  ancestor when a leaf matches the first leaf.

A leaf's discrete coloring is a labeling; its key is the invariant trace of
the path followed by the relabeled code and permutations. Equal keys give an
automorphism and the least key gives the canonical form.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.gf2core import BitMatrix, rank
from src.codes.distance import weight_enumerator, words_up_to_weight
from src.codes.linear_code import LinearCode, code_image
from src.config import config
from src.errors import DegreeMismatchError, EnumerationBoundError, SearchBudgetExceeded
from src.groups.perm_group import PermGroup
from src.groups.permutation import Permutation, commutes, conjugate, inverse
from src.groups.search import pointwise_stabilizer_orbits

logger = logging.getLogger(__name__)

Perms = Tuple[Permutation, ...]


def spanning_words(C: LinearCode) -> List[int]:
    """Codewords of weight <= w for the least w at which they span C"""
    if C.k == 0:
        return []
    enumerator = weight_enumerator(C)
    for w in range(1, C.n + 1):
        if not enumerator[w]:
            continue
        words = words_up_to_weight(C, w)
        if rank(BitMatrix(C.n, tuple(words))) == C.k:
            return words
    raise AssertionError("the codewords of a code span it")


def _compress(signatures: np.ndarray) -> np.ndarray:
    if signatures.ndim == 1:
        signatures = signatures[:, None]
    return np.unique(signatures, axis=0, return_inverse=True)[1].reshape(-1)


class _Refiner:
    """Equitable refinement of point colors against block (word) colors"""

    def __init__(self, n: int, words: Sequence[int], fixed_perms: Perms):
        self.n = n
        nbytes = max(1, -(-n // 8))
        if words:
            raw = np.frombuffer(b"".join(w.to_bytes(nbytes, "little") for w in words), dtype=np.uint8)
            bits = np.unpackbits(raw.reshape(len(words), nbytes), axis=1, bitorder="little")[:, :n]
            self.incidence = bits.astype(np.int64)
        else:
            self.incidence = np.zeros((0, n), dtype=np.int64)
        self.transposed = self.incidence.T.copy()
        self.fixed = [np.asarray(f.images, dtype=np.int64) for f in fixed_perms]

    def refine(self, colors: np.ndarray) -> Tuple[np.ndarray, tuple]:
        colors = _compress(colors)
        nwords = self.incidence.shape[0]
        blocks = np.zeros(nwords, dtype=np.int64)
        nblocks = 1 if nwords else 0
        while True:
            ncolors = int(colors.max()) + 1
            parts = [colors[:, None]]
            if nwords:
                counts = self.incidence @ np.eye(ncolors, dtype=np.int64)[colors]
                blocks = _compress(np.hstack([blocks[:, None], counts]))
                nblocks_new = int(blocks.max()) + 1
                parts.append(self.transposed @ np.eye(nblocks_new, dtype=np.int64)[blocks])
            else:
                nblocks_new = 0
            for f in self.fixed:
                parts.append(colors[f][:, None])
            refined = _compress(np.hstack(parts))
            stable = int(refined.max()) + 1 == ncolors and nblocks_new == nblocks
            colors, nblocks = refined, nblocks_new
            if stable:
                invariant = (tuple(np.bincount(colors).tolist()), nblocks)
                return colors, invariant


def _individualize(colors: np.ndarray, point: int) -> np.ndarray:
    out = colors * 2 + 1
    out[point] -= 1
    return out


def _target_cell(colors: np.ndarray) -> Optional[List[int]]:
    counts = np.bincount(colors)
    big = np.flatnonzero(counts > 1)
    if big.size == 0:
        return None
    return np.flatnonzero(colors == big[0]).tolist()


@dataclass(frozen=True)
class _Leaf:
    labeling: Permutation
    key: tuple
    path: Tuple[int, ...]


class _TargetReached(Exception):
    pass


class _StructureSearch:
    """One backtrack over the search tree of (code, distinguished permutations)"""

    def __init__(self, code: LinearCode, fixed_perms: Perms, target: Optional[tuple] = None, first_only: bool = False):
        self.code = code
        self.fixed_perms = fixed_perms
        self.n = code.n
        self.refiner = _Refiner(code.n, spanning_words(code), fixed_perms)
        self.budget = config.search.canonical_leaf_budget
        self.target = target
        self.first_only = first_only
        self.generators: List[Permutation] = []
        self.leaves = 0
        self.first: Optional[_Leaf] = None
        self.best: Optional[_Leaf] = None
        self.hit: Optional[Permutation] = None
        self._orbit_cache: dict = {}

    def run(self) -> "_StructureSearch":
        colors, invariant = self.refiner.refine(np.zeros(self.n, dtype=np.int64))
        try:
            self._node(colors, (invariant,), [])
        except _TargetReached:
            pass
        return self

    def _certificate(self, labeling: Permutation) -> tuple:
        image = code_image(self.code, labeling)
        return image.rows, tuple(conjugate(f, labeling).images for f in self.fixed_perms)

    def _orbit_ids(self, path: List[int]) -> List[int]:
        key = (tuple(path), len(self.generators))
        ids = self._orbit_cache.get(key)
        if ids is None:
            ids = [0] * self.n
            for j, orbit in enumerate(pointwise_stabilizer_orbits(self.generators, self.n, path)):
                for p in orbit:
                    ids[p] = j
            self._orbit_cache[key] = ids
        return ids

    def _pruned_by_trace(self, trace: tuple) -> bool:
        if self.target is not None:
            return trace != self.target[0][:len(trace)]
        if self.first is None:
            return False
        matches_first = trace == self.first.key[0][:len(trace)]
        worse_than_best = trace > self.best.key[0][:len(trace)]
        return not matches_first and worse_than_best

    def _node(self, colors: np.ndarray, trace: tuple, path: List[int]) -> Optional[int]:
        if self._pruned_by_trace(trace):
            return None
        cell = _target_cell(colors)
        if cell is None:
            return self._leaf(colors, trace, path)
        explored: List[int] = []
        for v in cell:
            if explored and self.generators:
                ids = self._orbit_ids(path)
                if any(ids[v] == ids[u] for u in explored):
                    continue
            explored.append(v)
            child, invariant = self.refiner.refine(_individualize(colors, v))
            jump = self._node(child, trace + (invariant,), path + [v])
            if jump is not None and jump < len(path):
                return jump
        return None

    def _add_generator(self, g: Permutation):
        if not g.is_identity() and g not in self.generators:
            self.generators.append(g)

    def _leaf(self, colors: np.ndarray, trace: tuple, path: List[int]) -> Optional[int]:
        self.leaves += 1
        if self.leaves > self.budget:
            raise SearchBudgetExceeded(f"Search on {self.code} passed {self.budget} leaves")
        labeling = Permutation(tuple(colors.tolist()))
        leaf = _Leaf(labeling, (trace, self._certificate(labeling)), tuple(path))

        if self.target is not None and leaf.key == self.target:
            self.hit = labeling
            raise _TargetReached()
        if self.first is None:
            self.first = self.best = leaf
            if self.first_only:
                raise _TargetReached()
            return None
        if leaf.key == self.first.key:
            self._add_generator(labeling * inverse(self.first.labeling))
            common = 0
            while common < min(len(path), len(self.first.path)) and path[common] == self.first.path[common]:
                common += 1
            return common
        if leaf.key == self.best.key:
            self._add_generator(labeling * inverse(self.best.labeling))
        elif leaf.key < self.best.key:
            self.best = leaf
        return None


def _normalize(C: LinearCode, fixed_perms: Sequence[Permutation]) -> Perms:
    if C.n > config.search.max_length:
        raise EnumerationBoundError(f"Code length {C.n} exceeds search bound {config.search.max_length}")
    perms = tuple(fixed_perms)
    for f in perms:
        if f.degree != C.n:
            raise DegreeMismatchError(f"Permutation degree {f.degree}, code length {C.n}")
    return perms


@dataclass(frozen=True)
class _SearchResult:
    best: _Leaf
    generators: Tuple[Permutation, ...]
    leaves: int


@lru_cache(maxsize=4096)
def _search(C: LinearCode, fixed_perms: Perms) -> _SearchResult:
    search = _StructureSearch(C, fixed_perms).run()
    logger.debug(f"Search on {C}: {search.leaves} leaves, {len(search.generators)} generators")
    return _SearchResult(best=search.best, generators=tuple(search.generators), leaves=search.leaves)


@dataclass(frozen=True)
class CanonicalLabeling:
    """Labeling that carries a code (and permutations) to its canonical representative"""
    labeling: Permutation
    code: LinearCode
    fixed_perms: Perms
    key: tuple


def canonical_labeling(C: LinearCode, fixed_perms: Sequence[Permutation] = ()) -> CanonicalLabeling:
    perms = _normalize(C, fixed_perms)
    best = _search(C, perms).best
    image = code_image(C, best.labeling).with_name(None)
    return CanonicalLabeling(
        labeling=best.labeling,
        code=image,
        fixed_perms=tuple(conjugate(f, best.labeling) for f in perms),
        key=best.key,
    )


def canonical_form(C: LinearCode, fixed_perms: Sequence[Permutation] = ()) -> LinearCode:
    """Representative constant on each equivalence class"""
    return canonical_labeling(C, fixed_perms).code


def automorphism_group(C: LinearCode, fixed_perms: Sequence[Permutation] = ()) -> PermGroup:
    """
    All sigma with C^sigma = C that commute with every permutation in ``fixed_perms``

    Falls back to trying all n! permutations when the search runs out of
    budget on a short code.
    """
    perms = _normalize(C, fixed_perms)
    try:
        generators = _search(C, perms).generators
    except SearchBudgetExceeded:
        if C.n > config.search.brute_force_length:
            raise
        logger.warning(f"Search budget exceeded on {C}; enumerating all {C.n}! permutations")
        return brute_force_automorphisms(C, perms)
    for g in generators:
        if code_image(C, g) != C or not all(commutes(g, f) for f in perms):
            raise RuntimeError(f"Search produced {g}, which is not an automorphism of {C}")
    return PermGroup(C.n, generators)


def _isomorphism_search(C: LinearCode, D: LinearCode, perms: Perms) -> Optional[Permutation]:
    """Search D's tree for a leaf matching C's first leaf"""
    first = _StructureSearch(C, perms, first_only=True).run().first
    search = _StructureSearch(D, perms, target=first.key).run()
    if search.hit is None:
        return None
    return first.labeling * inverse(search.hit)


def equivalence(
    C: LinearCode, D: LinearCode, fixed_perms: Sequence[Permutation] = ()
) -> Optional[Permutation]:
    """Some sigma with C^sigma = D commuting with ``fixed_perms``, or None"""
    if (C.n, C.k) != (D.n, D.k):
        raise DegreeMismatchError(f"Parameters [{C.n},{C.k}] and [{D.n},{D.k}] differ")
    perms = _normalize(C, fixed_perms)
    if C.k and weight_enumerator(C) != weight_enumerator(D):
        return None
    try:
        lc = canonical_labeling(C, perms)
        ld = canonical_labeling(D, perms)
        if lc.key != ld.key:
            return None
        sigma = lc.labeling * inverse(ld.labeling)
    except SearchBudgetExceeded:
        logger.warning(f"Canonical labeling over budget; searching for an isomorphism {C} -> {D} directly")
        sigma = _isomorphism_search(C, D, perms)
        if sigma is None:
            return None
    if code_image(C, sigma) != D:
        raise RuntimeError(f"Equivalence witness {sigma} does not map {C} onto {D}")
    return sigma


def brute_force_automorphisms(C: LinearCode, fixed_perms: Sequence[Permutation] = ()) -> PermGroup:
    """Aut by trying every permutation of the coordinates; short codes only"""
    perms = tuple(fixed_perms)
    gens: List[Permutation] = []
    group = PermGroup(C.n)
    for images in permutations(range(C.n)):
        g = Permutation._trusted(images)
        if g.is_identity() or g in group:
            continue
        if all(commutes(g, f) for f in perms) and code_image(C, g) == C:
            gens.append(g)
            group = PermGroup(C.n, gens)
    return group
