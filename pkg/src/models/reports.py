from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    name: str
    passed: bool
    measured: Dict[str, Any] = Field(default_factory=dict)
    tolerance: Optional[float] = None
    details: List[str] = Field(default_factory=list)


class VerificationReport(BaseModel):
    suite: str
    passed: bool
    checks: List[CheckResult]

    @classmethod
    def from_checks(cls, suite: str, checks: List[CheckResult]) -> "VerificationReport":
        return cls(suite=suite, passed=all(c.passed for c in checks), checks=checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed_checks(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]


class RunConfig(BaseModel):
    """Numeric knobs shared by every command."""

    tolerance: float = Field(default=1e-9, gt=0)
    algebraic_tolerance: float = Field(default=1e-12, gt=0)
    grid_h: float = Field(default=0.02, gt=0)
    boundary_samples: int = Field(default=512, gt=0)
    max_word_len: int = Field(default=4, ge=0)
    word_cap: int = Field(default=1_000_000, gt=0)
    refine_max: int = Field(default=3, ge=0)
    max_loop_length: int = Field(default=18, gt=0)
    seed: int = Field(default=42, ge=0)
    out_dir: Path = Path("out")
    svg: bool = False
