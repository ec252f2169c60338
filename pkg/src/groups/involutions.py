"""Conjugacy machinery for involutions and Klein four-groups"""

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.errors import DegreeMismatchError, NotAnInvolutionError, NotCommutingError
from src.groups.perm_group import PermGroup
from src.groups.permutation import (
    Permutation,
    commutes,
    conjugate,
    cycle_type,
    is_fixed_point_free,
)
from src.groups.search import element_search

logger = logging.getLogger(__name__)


def _sort_key(p: Permutation) -> Tuple[int, ...]:
    return p.images


def conjugation_orbits(members: Iterable[Permutation], acting: Sequence[Permutation]) -> List[List[Permutation]]:
    """
    Partition a set closed under conjugation by <acting> into its orbits

    Orbits come in order of their smallest member; each orbit is sorted.
    """
    pool = sorted(set(members), key=_sort_key)
    remaining = set(pool)
    orbits = []
    for start in pool:
        if start not in remaining:
            continue
        orbit = [start]
        remaining.discard(start)
        for p in orbit:
            for t in acting:
                q = conjugate(p, t)
                if q in remaining:
                    remaining.discard(q)
                    orbit.append(q)
        orbits.append(sorted(orbit, key=_sort_key))
    return orbits


class _InvolutionRule:
    """Image constraints for involutions: g(a) = b forces g(b) = a"""

    def __init__(self, fpf_only: bool):
        self.fpf_only = fpf_only

    def forced(self, point: int, images: Dict[int, int]) -> Optional[int]:
        if point in images.values():
            return next(a for a, b in images.items() if b == point)
        return None

    def consistent(self, point: int, image: int, images: Dict[int, int]) -> bool:
        if self.fpf_only and image == point:
            return False
        if image in images and images[image] != point:
            return False
        return True


def involutions(G: PermGroup, fpf_only: bool = False) -> List[Permutation]:
    """Every involution of G, sorted by image tuple, found by a pruned walk of the chain"""
    rule = _InvolutionRule(fpf_only)
    found = element_search(
        G.chain,
        leaf_test=lambda g: g.is_involution() and (not fpf_only or is_fixed_point_free(g)),
        forced=rule.forced,
        consistent=rule.consistent,
    )
    return sorted(found, key=_sort_key)


def conjugation_transporters(start: Permutation, acting: Sequence[Permutation]) -> Dict[Permutation, Permutation]:
    """Map each conjugate q of ``start`` under <acting> to some t with t^-1 start t = q"""
    trans = {start: Permutation.identity(start.degree)}
    queue = [start]
    for p in queue:
        u = trans[p]
        for t in acting:
            q = conjugate(p, t)
            if q not in trans:
                trans[q] = u * t
                queue.append(q)
    return trans


def involution_class_reps(G: PermGroup, fpf_only: bool = False) -> List[Permutation]:
    """One representative (the smallest image tuple) per G-class of involutions"""
    reps = [orbit[0] for orbit in conjugation_orbits(involutions(G, fpf_only), G.generators)]
    logger.debug(f"{len(reps)} involution classes in a group of order {G.order()}")
    return reps


def _aligned_cycles(sigma: Permutation) -> List[Tuple[int, ...]]:
    covered = set()
    cycles = sigma.cycles()
    for c in cycles:
        covered.update(c)
    cycles += [(p,) for p in range(sigma.degree) if p not in covered]
    return sorted(cycles, key=lambda c: (len(c), c[0]))


def conjugator_in_sym(sigma: Permutation, tau: Permutation) -> Optional[Permutation]:
    """Some t with t^-1 sigma t = tau, or None when the cycle types differ"""
    if sigma.degree != tau.degree:
        raise DegreeMismatchError(f"Degrees {sigma.degree} and {tau.degree}")
    if cycle_type(sigma) != cycle_type(tau):
        return None
    images = [0] * sigma.degree
    for src_cycle, dst_cycle in zip(_aligned_cycles(sigma), _aligned_cycles(tau)):
        for a, b in zip(src_cycle, dst_cycle):
            images[a] = b
    return Permutation(tuple(images))


def _check_klein_pair(a: Permutation, b: Permutation):
    for p in (a, b):
        if not p.is_involution():
            raise NotAnInvolutionError(f"{p} is not an involution")
    if not commutes(a, b):
        raise NotCommutingError(f"{a} and {b} do not commute")


def _klein_orbits(a: Permutation, b: Permutation) -> Dict[Tuple[bool, bool, bool], List[int]]:
    """Orbit representatives of <a, b> grouped by which of a, b, ab fix them"""
    by_type = defaultdict(list)
    seen = set()
    for x in range(a.degree):
        if x in seen:
            continue
        ax, bx = a.images[x], b.images[x]
        seen.update((x, ax, bx, a.images[bx]))
        by_type[(ax == x, bx == x, ax == bx)].append(x)
    return by_type


def klein_pair_conjugator(
    pair: Tuple[Permutation, Permutation], target: Tuple[Permutation, Permutation]
) -> Optional[Permutation]:
    """
    Some t with t^-1 a t = c and t^-1 b t = d for pair (a, b) and target (c, d)

    Orbits of <a, b> are matched with target orbits of the same stabilizer
    type and mapped pointwise (x, a(x), b(x), ab(x)). Returns None when the
    orbit type counts differ, which is exactly when no conjugator exists.
    """
    a, b = pair
    c, d = target
    if len({a.degree, b.degree, c.degree, d.degree}) != 1:
        raise DegreeMismatchError("Klein pairs of different degrees")
    _check_klein_pair(a, b)
    _check_klein_pair(c, d)

    source_orbits = _klein_orbits(a, b)
    target_orbits = _klein_orbits(c, d)
    if {k: len(v) for k, v in source_orbits.items()} != {k: len(v) for k, v in target_orbits.items()}:
        return None

    images = [0] * a.degree
    for kind, xs in source_orbits.items():
        for x, y in zip(xs, target_orbits[kind]):
            images[x] = y
            images[a.images[x]] = c.images[y]
            images[b.images[x]] = d.images[y]
            images[a.images[b.images[x]]] = c.images[d.images[y]]
    return Permutation(tuple(images))


def is_free_klein_pair(a: Permutation, b: Permutation) -> bool:
    """a, b commuting involutions with a, b, ab all fixed-point-free"""
    return (
        a.is_involution()
        and b.is_involution()
        and commutes(a, b)
        and is_fixed_point_free(a)
        and is_fixed_point_free(b)
        and is_fixed_point_free(a * b)
    )
