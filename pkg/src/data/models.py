"""Report documents"""

import json
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class RunInfo(BaseModel):
    n: int
    target_d: int
    half_target_d: int
    threads: int
    pair: str = "alpha,beta"
    wall_time_seconds: Optional[float] = None


class Counts(BaseModel):
    database: int = 0
    library: int = 0
    representatives: int = 0
    buckets: int = 0
    glued: int = 0
    survivors: int = 0


class SurvivorRecord(BaseModel):
    summary: str = Field(description="[n,k,d]")
    bucket: int
    parents: List[int] = Field(description="Indices of Y_a and Y_b inside the bucket")
    omega: str = Field(description="Gluing permutation in 1-based cycle notation")
    pair_dim: int
    canonical_generator: List[str]


class ProfileRecord(BaseModel):
    triple_dim: int
    pair_dims: List[int]
    count: int
    compatible: bool


class PairOutcome(BaseModel):
    pair: str
    survivors: int
    classes_match: bool


class Report(BaseModel):
    run: RunInfo
    counts: Counts
    library_rejections: Dict[str, int] = Field(default_factory=dict)
    class_counts: List[List[int]] = Field(default_factory=list, description="[index, s, t_1, ..., t_s]")
    survivors: List[SurvivorRecord] = Field(default_factory=list)
    profiles: List[List[ProfileRecord]] = Field(default_factory=list)
    cases_table: List[List[int]] = Field(default_factory=list)
    other_pairs: List[PairOutcome] = Field(default_factory=list)
    offending_rows: List[List[int]] = Field(default_factory=list)
    verdict: str

    def to_json(self) -> str:
        """Stable serialization: sorted keys, fixed indentation"""
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"
