"""
Minimum distance and weight distribution

Exhaustive mode walks all 2^k codewords in numpy chunks: a table of every
combination of the first ``chunk_bits`` generator rows is XORed with a
Gray-code sequence over the remaining rows. Auto mode enumerates codewords by
ascending information weight over disjoint information sets and stops once
the weight found meets the lower bound for everything not yet enumerated.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.gf2core import pack_words, rref_rows, unpack_word_row
from src.codes.linear_code import LinearCode
from src.config import config
from src.errors import EmptyCodeError, EnumerationBoundError

logger = logging.getLogger(__name__)

MODES = ("auto", "exhaustive")


@dataclass(frozen=True)
class WeightEnumerator:
    """counts[w] = number of codewords of weight w"""
    counts: Tuple[int, ...]

    def __getitem__(self, weight: int) -> int:
        return self.counts[weight]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def min_distance(self) -> Optional[int]:
        return next((w for w, c in enumerate(self.counts) if w > 0 and c), None)

    def nonzero(self) -> dict:
        return {w: c for w, c in enumerate(self.counts) if c}


def _check_enumerable(C: LinearCode):
    bound = config.distance.exhaustive_max_k
    if C.k > bound:
        raise EnumerationBoundError(f"Dimension {C.k} exceeds exhaustive enumeration bound {bound}")


def codeword_chunks(rows: Sequence[int], n: int, chunk_bits: Optional[int] = None) -> Iterator[np.ndarray]:
    """Every codeword of span(rows) exactly once, as (m, words) uint64 blocks"""
    bits = config.distance.chunk_bits if chunk_bits is None else chunk_bits
    k = len(rows)
    low = min(k, bits)
    packed = pack_words(rows, n)
    table = np.zeros((1 << low, packed.shape[1]), dtype=np.uint64)
    for i in range(low):
        size = 1 << i
        table[size:2 * size] = table[:size] ^ packed[i]
    yield table
    high = packed[low:]
    offset = np.zeros(table.shape[1], dtype=np.uint64)
    for t in range(1, 1 << (k - low)):
        offset ^= high[(t & -t).bit_length() - 1]
        yield table ^ offset


def _chunk_weights(chunk: np.ndarray) -> np.ndarray:
    return np.bitwise_count(chunk).sum(axis=1, dtype=np.int64)


def weight_enumerator(C: LinearCode) -> WeightEnumerator:
    _check_enumerable(C)
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for chunk in codeword_chunks(C.rows, C.n):
        counts += np.bincount(_chunk_weights(chunk), minlength=C.n + 1)
    return WeightEnumerator(tuple(int(c) for c in counts))


def words_up_to_weight(C: LinearCode, max_weight: int) -> List[int]:
    """Nonzero codewords of weight at most ``max_weight``, as packed integers"""
    _check_enumerable(C)
    out = []
    for chunk in codeword_chunks(C.rows, C.n):
        weights = _chunk_weights(chunk)
        for i in np.nonzero((weights > 0) & (weights <= max_weight))[0]:
            out.append(unpack_word_row(chunk[i]))
    return sorted(out)


def _min_distance_exhaustive(C: LinearCode, early_abort_at: Optional[int]) -> int:
    _check_enumerable(C)
    best = C.n + 1
    for chunk in codeword_chunks(C.rows, C.n):
        weights = _chunk_weights(chunk)
        nonzero = weights[weights > 0]
        if nonzero.size:
            best = min(best, int(nonzero.min()))
        if early_abort_at is not None and best < early_abort_at:
            break
    return best


def information_sets(rows: Sequence[int], n: int) -> List[List[int]]:
    """Generator matrices systematic on pairwise disjoint information sets"""
    k = len(rows)
    remaining = list(range(n))
    systematic = []
    while len(remaining) >= k:
        rest = sorted(set(range(n)) - set(remaining))
        reduced, pivots = rref_rows(rows, n, remaining + rest)
        if len(pivots) < k or not set(pivots) <= set(remaining):
            break
        systematic.append(reduced)
        used = set(pivots)
        remaining = [c for c in remaining if c not in used]
    return systematic


def _combination_sums(rows: Sequence[int], size: int) -> Iterator[int]:
    """XOR of every ``size``-subset of rows, one XOR per search node"""
    k = len(rows)
    stack = [(0, 0, 0)]
    while stack:
        start, depth, acc = stack.pop()
        if depth == size:
            yield acc
            continue
        for i in range(k - (size - depth), start - 1, -1):
            stack.append((i + 1, depth + 1, acc ^ rows[i]))


def _min_distance_information_sets(C: LinearCode, early_abort_at: Optional[int]) -> int:
    systematic = information_sets(C.rows, C.n)
    m = len(systematic)
    best = C.n + 1
    for r in range(1, C.k + 1):
        for gen in systematic:
            for word in _combination_sums(gen, r):
                w = word.bit_count()
                if w < best:
                    best = w
                    if early_abort_at is not None and best < early_abort_at:
                        return best
        if best <= m * (r + 1):
            logger.debug(f"Information-set search on {C}: d={best} settled at round {r} with {m} sets")
            return best
    return best


def min_distance(C: LinearCode, mode: str = "auto", early_abort_at: Optional[int] = None) -> int:
    """
    Minimum weight of a nonzero codeword

    Args:
        C: Code of dimension at least 1
        mode: ``exhaustive``, or ``auto`` which enumerates exhaustively up to
            ``config.distance.exhaustive_max_k`` and uses information sets above it
        early_abort_at: When set, any weight below it may be returned as soon as found

    Returns:
        The exact minimum distance, or some weight < early_abort_at
    """
    if C.k == 0:
        raise EmptyCodeError(f"Minimum distance of the zero code of length {C.n} is undefined")
    if mode == "exhaustive":
        return _min_distance_exhaustive(C, early_abort_at)
    if mode == "auto":
        if C.k <= config.distance.exhaustive_max_k:
            return _min_distance_exhaustive(C, early_abort_at)
        return _min_distance_information_sets(C, early_abort_at)
    raise ValueError(f"Unknown distance mode {mode!r}; expected one of {MODES}")
