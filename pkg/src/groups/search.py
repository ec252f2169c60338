"""Backtrack searches over stabilizer chains: centralizers and coset transversals"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from src.errors import DegreeMismatchError, NotASubgroupError
from src.groups.perm_group import PermGroup, StabilizerChain, orbit_partition, orbit_transversal
from src.groups.permutation import Permutation, commutes, inverse

logger = logging.getLogger(__name__)

ImageRule = Callable[[int, Dict[int, int]], Optional[int]]
ImageCheck = Callable[[int, int, Dict[int, int]], bool]


class _CommutingRule:
    """Image constraints for elements commuting with every h: g(h(x)) = h(g(x))"""

    def __init__(self, hgens: Sequence[Permutation]):
        self.hgens = list(hgens)
        self.hinvs = [inverse(h) for h in hgens]

    def forced(self, point: int, images: Dict[int, int]) -> Optional[int]:
        for h, h_inv in zip(self.hgens, self.hinvs):
            x = h_inv.images[point]
            if x in images:
                return h.images[images[x]]
        return None

    def consistent(self, point: int, image: int, images: Dict[int, int]) -> bool:
        for h, h_inv in zip(self.hgens, self.hinvs):
            x = h_inv.images[point]
            if x in images and h.images[images[x]] != image:
                return False
            y = h.images[point]
            if y in images and images[y] != h.images[image]:
                return False
        return True


def subgroup_search(
    chain: StabilizerChain,
    leaf_test: Callable[[Permutation], bool],
    forced: ImageRule,
    consistent: ImageCheck,
) -> List[Permutation]:
    """
    Generators of the subgroup {g in G : leaf_test(g)} of the group behind ``chain``

    Levels are completed from the deepest up. At level l only base images
    outside the orbit of the already found subgroup are tried, and a failed
    image rules out its whole orbit. ``forced`` and ``consistent`` prune on
    partial base images and must hold for every member of the subgroup.
    """
    levels = chain.levels
    depth = len(levels)
    degree = chain.degree
    found: List[Permutation] = []

    def dfs(d: int, partial: Permutation, images: Dict[int, int]) -> Optional[Permutation]:
        if d == depth:
            return partial if leaf_test(partial) else None
        level = levels[d]
        b = level.base_point
        target = forced(b, images)
        if target is None:
            candidates = level.orbit
        else:
            y = partial.images.index(target)
            candidates = [y] if y in level.transversal else []
        for y in candidates:
            img = partial.images[y]
            if not consistent(b, img, images):
                continue
            images[b] = img
            result = dfs(d + 1, level.transversal[y] * partial, images)
            del images[b]
            if result is not None:
                return result
        return None

    for l in reversed(range(depth)):
        level = levels[l]
        if len(level.transversal) == 1:
            continue
        b = level.base_point
        prefix = {p: p for p in chain.base[:l]}
        covered = set(orbit_transversal(b, found, degree))
        ruled_out = set()
        for gamma in level.orbit:
            if gamma in covered or gamma in ruled_out:
                continue
            target = forced(b, prefix)
            hit = None
            if (target is None or target == gamma) and consistent(b, gamma, prefix):
                images = dict(prefix)
                images[b] = gamma
                hit = dfs(l + 1, level.transversal[gamma], images)
            if hit is None:
                ruled_out |= set(orbit_transversal(gamma, found, degree))
            else:
                found.append(hit)
                covered = set(orbit_transversal(b, found, degree))
    return found


def element_search(
    chain: StabilizerChain,
    leaf_test: Callable[[Permutation], bool],
    forced: ImageRule,
    consistent: ImageCheck,
) -> Iterator[Permutation]:
    """
    Every g in the group behind ``chain`` with leaf_test(g)

    Unlike ``subgroup_search`` the matching set need not be a subgroup, so no
    orbit pruning happens; ``forced`` and ``consistent`` must hold for every
    matching element.
    """
    levels = chain.levels
    depth = len(levels)

    def dfs(d: int, partial: Permutation, images: Dict[int, int]) -> Iterator[Permutation]:
        if d == depth:
            if leaf_test(partial):
                yield partial
            return
        level = levels[d]
        b = level.base_point
        target = forced(b, images)
        if target is None:
            candidates = level.orbit
        else:
            y = partial.images.index(target)
            candidates = [y] if y in level.transversal else []
        for y in candidates:
            img = partial.images[y]
            if not consistent(b, img, images):
                continue
            images[b] = img
            yield from dfs(d + 1, level.transversal[y] * partial, images)
            del images[b]

    yield from dfs(0, Permutation.identity(chain.degree), {})


def _check_same_degree(G: PermGroup, H: PermGroup):
    if G.degree != H.degree:
        raise DegreeMismatchError(f"Degrees {G.degree} and {H.degree}")


def centralizer(G: PermGroup, H: PermGroup) -> PermGroup:
    """{g in G : gh = hg for every generator h of H}"""
    _check_same_degree(G, H)
    hgens = list(H.generators)
    if not hgens:
        return G
    base_prefix = [p for orbit in orbit_partition(hgens, G.degree) for p in orbit]
    chain = G.chain_with_base(base_prefix)
    rule = _CommutingRule(hgens)
    gens = subgroup_search(
        chain,
        leaf_test=lambda g: all(commutes(g, h) for h in hgens),
        forced=rule.forced,
        consistent=rule.consistent,
    )
    result = PermGroup(G.degree, gens)
    logger.debug(f"Centralizer in a group of order {G.order()}: order {result.order()}")
    return result


def pointwise_stabilizer_orbits(
    gens: Sequence[Permutation], degree: int, points: Sequence[int]
) -> List[List[int]]:
    """Orbits of the pointwise stabilizer of ``points`` in <gens>"""
    if not gens:
        return [[p] for p in range(degree)]
    chain = StabilizerChain(degree, gens, base_prefix=points)
    return orbit_partition(chain.stabilizer_generators(len(dict.fromkeys(points))), degree)


@dataclass
class Transversal:
    """One representative per right coset Hg of H in G"""
    supergroup: PermGroup
    subgroup: PermGroup
    representatives: List[Permutation]

    def __len__(self) -> int:
        return len(self.representatives)

    def __iter__(self):
        return iter(self.representatives)


def coset_key(chain: StabilizerChain, g: Permutation) -> tuple:
    """
    Canonical element of the right coset Hg, where ``chain`` belongs to H

    At each level the base point is sent by the transversal element that
    minimizes its image under the current element.
    """
    c = g
    for level in chain.levels:
        y = min(level.transversal, key=lambda p: c.images[p])
        c = level.transversal[y] * c
    return c.images


def right_transversal(G: PermGroup, H: PermGroup) -> Transversal:
    """Right transversal by breadth-first search over cosets, identity first"""
    _check_same_degree(G, H)
    for h in H.generators:
        if h not in G:
            raise NotASubgroupError(f"Generator {h} of the subgroup is not in the supergroup")
    chain = H.chain
    identity = Permutation.identity(G.degree)
    reps = [identity]
    seen = {coset_key(chain, identity)}
    for g in reps:
        for s in G.generators:
            h = g * s
            key = coset_key(chain, h)
            if key not in seen:
                seen.add(key)
                reps.append(h)
    expected = G.order() // H.order()
    if len(reps) != expected:
        raise RuntimeError(f"Coset enumeration found {len(reps)} cosets, expected {expected}")
    logger.debug(f"Right transversal: {len(reps)} cosets")
    return Transversal(G, H, reps)
