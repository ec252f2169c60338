"""Permutation groups via stabilizer chains"""

import logging
import random
import threading
from dataclasses import dataclass, field
from math import prod
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.config import config
from src.errors import DegreeMismatchError, EnumerationBoundError
from src.groups.permutation import Permutation, inverse

logger = logging.getLogger(__name__)


def orbit_transversal(point: int, gens: Sequence[Permutation], degree: int) -> Dict[int, Permutation]:
    """Map each point y of the orbit of ``point`` to some u with u(point) = y"""
    identity = Permutation.identity(degree)
    trans = {point: identity}
    queue = [point]
    for x in queue:
        u = trans[x]
        for g in gens:
            y = g.images[x]
            if y not in trans:
                trans[y] = u * g
                queue.append(y)
    return trans


def orbit_partition(gens: Sequence[Permutation], degree: int) -> List[List[int]]:
    """Orbits of <gens> in BFS order, listed by smallest point"""
    seen = [False] * degree
    orbits = []
    for start in range(degree):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        for x in orbit:
            for g in gens:
                y = g.images[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
        orbits.append(orbit)
    return orbits


@dataclass
class ChainLevel:
    """One level of a stabilizer chain"""
    base_point: int
    generators: List[Permutation]
    transversal: Dict[int, Permutation]
    inverses: Dict[int, Permutation] = field(default_factory=dict)

    def __post_init__(self):
        self.inverses = {y: inverse(u) for y, u in self.transversal.items()}

    @property
    def orbit(self) -> List[int]:
        return sorted(self.transversal)


class StabilizerChain:
    """
    Base and strong generating set

    Built by a seeded random Schreier-Sims phase followed by a deterministic
    Schreier generator verification, so the result is always complete. Base
    points after ``base_prefix`` are the smallest points moved by the element
    that forces them.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation],
        base_prefix: Sequence[int] = (),
        seed: Optional[int] = None,
        random_rounds: Optional[int] = None,
    ):
        self.degree = degree
        self.base: List[int] = []
        self.strong: List[Permutation] = []
        self.levels: List[ChainLevel] = []

        for b in base_prefix:
            if b not in self.base:
                self.base.append(b)
        gens = [g for g in generators if not g.is_identity()]
        for g in gens:
            self._append_strong(g)
        self._rebuild_levels()

        settings = config.groups
        rounds = settings.random_rounds if random_rounds is None else random_rounds
        if gens and rounds > 0:
            rng = random.Random(settings.seed if seed is None else seed)
            self._random_phase(gens, rng, rounds)
        self._verify()

    def _append_strong(self, g: Permutation):
        if all(g.images[b] == b for b in self.base):
            self.base.append(g.moved_points()[0])
        self.strong.append(g)

    def _rebuild_levels(self):
        self.levels = []
        for i, b in enumerate(self.base):
            fixed = self.base[:i]
            gens = [g for g in self.strong if all(g.images[p] == p for p in fixed)]
            self.levels.append(ChainLevel(b, gens, orbit_transversal(b, gens, self.degree)))

    def sift(self, g: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        """Strip g through the levels from ``start``; returns residue and the level reached"""
        for i in range(start, len(self.levels)):
            level = self.levels[i]
            y = g.images[level.base_point]
            u_inv = level.inverses.get(y)
            if u_inv is None:
                return g, i
            g = g * u_inv
        return g, len(self.levels)

    def _absorb(self, residue: Permutation, level: int) -> bool:
        if level == len(self.levels) and residue.is_identity():
            return False
        self._append_strong(residue)
        self._rebuild_levels()
        return True

    def _random_phase(self, gens: List[Permutation], rng: random.Random, rounds: int):
        pool = list(gens)
        while len(pool) < 10:
            pool.append(gens[len(pool) % len(gens)])
        acc = Permutation.identity(self.degree)
        quiet = 0
        while quiet < rounds:
            i, j = rng.sample(range(len(pool)), 2)
            other = pool[j] if rng.random() < 0.5 else inverse(pool[j])
            pool[i] = pool[i] * other
            acc = acc * pool[i]
            residue, level = self.sift(acc)
            if self._absorb(residue, level):
                quiet = 0
            else:
                quiet += 1

    def _verify(self):
        i = len(self.levels) - 1
        while i >= 0:
            restart = self._check_level(i)
            i = i - 1 if restart is None else restart

    def _check_level(self, i: int) -> Optional[int]:
        level = self.levels[i]
        for x, u in list(level.transversal.items()):
            for s in level.generators:
                schreier = u * s * level.inverses[s.images[x]]
                if schreier.is_identity():
                    continue
                residue, j = self.sift(schreier, i + 1)
                if self._absorb(residue, j):
                    return j
        return None

    def order(self) -> int:
        return prod(len(level.transversal) for level in self.levels)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, level = self.sift(g)
        return level == len(self.levels) and residue.is_identity()

    def elements(self) -> List[Permutation]:
        out = [Permutation.identity(self.degree)]
        for level in reversed(self.levels):
            reps = [level.transversal[y] for y in level.orbit]
            out = [g * u for g in out for u in reps]
        return out

    def random_element(self, rng: random.Random) -> Permutation:
        g = Permutation.identity(self.degree)
        for level in reversed(self.levels):
            g = g * level.transversal[rng.choice(level.orbit)]
        return g

    def stabilizer_generators(self, depth: int) -> List[Permutation]:
        """Strong generators fixing the first ``depth`` base points"""
        if depth >= len(self.levels):
            return []
        return list(self.levels[depth].generators)


class PermGroup:
    """
    Finite permutation group on {0..degree-1}

    The stabilizer chain is built on first use under a lock; afterwards every
    query is read-only.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        gens = []
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatchError(f"Generator of degree {g.degree} in a group of degree {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(gens)
        self._chain: Optional[StabilizerChain] = None
        self._lock = threading.Lock()

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree)

    @classmethod
    def symmetric(cls, degree: int) -> "PermGroup":
        if degree < 2:
            return cls(degree)
        swap = Permutation.from_cycles([(1, 2)], degree)
        cycle = Permutation.from_cycles([tuple(range(1, degree + 1))], degree)
        return cls(degree, [swap, cycle])

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.degree, self.generators)
        return self._chain

    def chain_with_base(self, base_prefix: Sequence[int]) -> StabilizerChain:
        """A fresh chain whose base starts with ``base_prefix``"""
        return StabilizerChain(self.degree, self.chain.strong, base_prefix)

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def is_trivial(self) -> bool:
        return not self.generators

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def elements(self, bound: Optional[int] = None) -> List[Permutation]:
        limit = config.groups.enumeration_bound if bound is None else bound
        order = self.order()
        if order > limit:
            raise EnumerationBoundError(f"Group of order {order} exceeds enumeration bound {limit}")
        return self.chain.elements()

    def orbit(self, point: int) -> List[int]:
        return sorted(orbit_transversal(point, self.generators, self.degree))

    def orbits(self) -> List[List[int]]:
        return [sorted(o) for o in orbit_partition(self.generators, self.degree)]

    def random_element(self, rng: random.Random) -> Permutation:
        return self.chain.random_element(rng)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, generators=[{gens}])"


def stabilizer_chain(gens: Sequence[Permutation], degree: Optional[int] = None) -> PermGroup:
    """Group generated by ``gens`` with its chain built"""
    if degree is None:
        if not gens:
            raise ValueError("degree is required when there are no generators")
        degree = gens[0].degree
    group = PermGroup(degree, gens)
    group.chain
    logger.debug(f"Stabilizer chain of degree {degree}: order {group.order()}, base {group.chain.base}")
    return group


def elements(G: PermGroup) -> List[Permutation]:
    return G.elements()


def generated_elements(gens: Sequence[Permutation], degree: int) -> List[Permutation]:
    """Closure of gens by BFS; an independent check on chain enumeration for small groups"""
    identity = Permutation.identity(degree)
    seen = {identity}
    queue = [identity]
    for g in queue:
        for s in gens:
            h = g * s
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return queue

