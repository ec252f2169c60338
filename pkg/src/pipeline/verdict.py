"""Compare survivor profiles against the cases table"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Sequence, Set, Tuple

from src.pipeline.profiles import CasesTable, IntersectionProfile, Row

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    CONTRADICTION = "CONTRADICTION"
    CONSISTENT = "CONSISTENT"
    UNDETERMINED = "UNDETERMINED"


@dataclass
class VerdictResult:
    verdict: Verdict
    compatible: List[Tuple[int, IntersectionProfile]] = field(default_factory=list)
    offending_rows: Set[Row] = field(default_factory=set)
    profiles_checked: int = 0


def profile_compatible(profile: IntersectionProfile, table: CasesTable) -> bool:
    return all(table.admits(row) for row in profile.rows())


def verdict(profiles: Sequence[Sequence[IntersectionProfile]], table: CasesTable) -> VerdictResult:
    """
    Args:
        profiles: For each survivor, its intersection profiles
        table: Admissible rows

    Returns:
        CONSISTENT if some profile has all its rows in the table,
        CONTRADICTION if every profile has a row outside it,
        UNDETERMINED if there are no profiles at all
    """
    result = VerdictResult(verdict=Verdict.UNDETERMINED)
    for index, survivor_profiles in enumerate(profiles):
        for profile in survivor_profiles:
            result.profiles_checked += 1
            if profile_compatible(profile, table):
                result.compatible.append((index, profile))
            else:
                result.offending_rows.update(r for r in profile.rows() if not table.admits(r))

    if result.profiles_checked == 0:
        result.verdict = Verdict.UNDETERMINED
    elif result.compatible:
        result.verdict = Verdict.CONSISTENT
    else:
        result.verdict = Verdict.CONTRADICTION
    logger.info(
        f"Verdict {result.verdict.value}: {result.profiles_checked} profiles, "
        f"{len(result.compatible)} compatible, offending rows {sorted(result.offending_rows)}"
    )
    return result
