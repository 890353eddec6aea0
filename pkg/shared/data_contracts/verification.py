"""Verification run contracts and schemas."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator


class Verdict(str, Enum):
    """Outcome of one check on one graft."""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class GeneratorKind(str, Enum):
    """How verification instances are produced."""
    ENUMERATE = "enumerate"
    RANDOM = "random"


class TerminalPolicy(str, Enum):
    """Which terminal sets accompany each generated graph."""
    ALL_EVEN = "all_even"
    RANDOM_EVEN = "random_even"


class InstanceSpec(BaseModel):
    """Parameters of an instance stream."""

    generator: GeneratorKind = Field(
        GeneratorKind.ENUMERATE, description="Instance generator"
    )
    min_vertices: int = Field(2, ge=1, le=64, description="Smallest vertex count")
    max_vertices: int = Field(5, ge=1, le=64, description="Largest vertex count")
    min_edges: int = Field(
        0, ge=0, le=128, description="Smallest edge count of random grafts"
    )
    max_edges: int = Field(8, ge=0, le=128, description="Largest edge count")
    allow_parallel: bool = Field(False, description="Allow parallel edges")
    bipartite_only: bool = Field(True, description="Only produce bipartite graphs")
    terminal_policy: TerminalPolicy = Field(
        TerminalPolicy.ALL_EVEN, description="Terminal sets per graph"
    )
    seed: int = Field(0, ge=0, description="Random seed")
    count: int = Field(100, ge=0, description="Number of random instances")

    @model_validator(mode='after')
    def validate_ranges(self) -> "InstanceSpec":
        if self.min_vertices > self.max_vertices:
            raise ValueError("min_vertices exceeds max_vertices")
        return self


class CheckReport(BaseModel):
    """Verdict of one check on one instance."""

    check_id: str
    instance: str = Field(..., description="Digest of the canonical graft")
    verdict: Verdict
    message: Optional[str] = None
    witness: Optional[Dict[str, Any]] = Field(
        None,
        description="Replayable counterexample: graft document and offending objects",
    )
    seconds: Optional[float] = Field(
        None, description="Wall time, only when timings are requested"
    )


class CheckTally(BaseModel):
    """Counts of one check over a whole run."""

    statement: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    first_failure: Optional[CheckReport] = None
    seconds: Optional[float] = None

    def add(self, report: CheckReport) -> None:
        if report.verdict == Verdict.PASS:
            self.passed += 1
        elif report.verdict == Verdict.FAIL:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = report
        else:
            self.skipped += 1
        if report.seconds is not None:
            self.seconds = (self.seconds or 0.0) + report.seconds


class SuiteSummary(BaseModel):
    """Canonical summary of a verification run."""

    spec: Optional[InstanceSpec] = None
    instances: int = 0
    checks: Dict[str, CheckTally] = Field(default_factory=dict)
    notes: List[str] = Field(
        default_factory=list, description="Interpretation choices in effect"
    )
    diagnostics: Dict[str, int] = Field(default_factory=dict)
    literal_sign: bool = False

    @property
    def failed(self) -> int:
        return sum(tally.failed for tally in self.checks.values())

    @property
    def passed(self) -> bool:
        return self.failed == 0
