"""Standard binary codes and small self-dual libraries"""

import random
from typing import List, Optional

from src.algebra.gf2core import BitMatrix, dual_basis, reduce_row, rref_rows
from src.codes.linear_code import LinearCode, direct_sum, is_self_dual, make_code
from src.groups.perm_group import PermGroup
from src.groups.permutation import apply_rows

GOLAY_GENERATOR_EXPONENTS = (0, 2, 4, 5, 6, 10, 11)


def repetition_code(n: int) -> LinearCode:
    return make_code([(1 << n) - 1], n, name=f"rep{n}")


def i2() -> LinearCode:
    return make_code(["11"], 2, name="i2")


def i2_power(m: int) -> LinearCode:
    """Direct sum of m copies of i2"""
    return direct_sum([i2()] * m).with_name(f"i2^{m}")


def reed_muller_first_order(m: int) -> LinearCode:
    """RM(1, m): the all-ones word and the m coordinate functions"""
    n = 1 << m
    rows = [(1 << n) - 1]
    for bit in range(m):
        rows.append(sum(1 << i for i in range(n) if (i >> bit) & 1))
    return make_code(rows, n, name=f"RM(1,{m})")


def e8() -> LinearCode:
    """Extended Hamming [8,4,4] code, as RM(1,3)"""
    return reed_muller_first_order(3).with_name("e8")


def extended_golay() -> LinearCode:
    """[24,12,8] code: cyclic shifts of the Golay generator polynomial plus a parity bit"""
    g = sum(1 << e for e in GOLAY_GENERATOR_EXPONENTS)
    parity = (len(GOLAY_GENERATOR_EXPONENTS) % 2) << 23
    rows = [(g << i) | parity for i in range(12)]
    return make_code(rows, 24, name="golay24")


def d16_plus() -> LinearCode:
    """The self-dual [16,8,4] code d16+: d16 and its glue word 0101...01"""
    rows = ["00" * i + "1111" + "00" * (6 - i) for i in range(7)]
    rows.append("01" * 8)
    return make_code(rows, 16, name="d16+")


def random_self_dual_code(n: int, rng: random.Random) -> LinearCode:
    """Grow span(1^n) by random even-weight vectors of its dual until self-dual"""
    if n % 2:
        raise ValueError(f"Self-dual codes need even length, got {n}")
    rows = [(1 << n) - 1]
    while len(rows) < n // 2:
        reduced, pivots = rref_rows(rows, n)
        dual_rows = dual_basis(BitMatrix(n, tuple(reduced)), n).rows
        v = 0
        for r in dual_rows:
            if rng.getrandbits(1):
                v ^= r
        if v.bit_count() % 2 == 0 and reduce_row(reduced, pivots, v):
            rows.append(v)
    code = make_code(rows, n, name=f"random{n}")
    assert is_self_dual(code)
    return code


def self_dual_class_representatives(n: int) -> List[LinearCode]:
    """One code per equivalence class of self-dual codes, lengths up to 8"""
    if n % 2 or not 2 <= n <= 8:
        raise ValueError(f"Class representatives are tabulated for even 2 <= n <= 8, got {n}")
    reps = [i2_power(n // 2)]
    if n == 8:
        reps.append(e8())
    return reps


def orbit_closure(codes: List[LinearCode], group: PermGroup, limit: Optional[int] = None) -> List[LinearCode]:
    """All images of ``codes`` under ``group``, sorted by generator rows"""
    seen = {}
    queue = []
    for C in codes:
        if C not in seen:
            seen[C] = C
            queue.append(C)
    for C in queue:
        for g in group.generators:
            image = make_code(apply_rows(C.gen, g), C.n, C.name)
            if image not in seen:
                seen[image] = image
                queue.append(image)
                if limit is not None and len(queue) > limit:
                    raise ValueError(f"Orbit closure exceeded {limit} codes")
    return sorted(queue, key=lambda C: C.rows)


def all_self_dual_codes(n: int) -> List[LinearCode]:
    """Every self-dual code of length n (n <= 8)"""
    return orbit_closure(self_dual_class_representatives(n), PermGroup.symmetric(n))
