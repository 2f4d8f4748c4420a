"""Models for the benchmark tooling: cut generator, oracle and validator."""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from app.models.chromosome import Chromosome


class CutGenSpec(BaseModel):
    """Parameters for a guillotine-cut instance."""

    model_config = {"frozen": True}

    dims: Tuple[int, int, int] = Field(..., description="Container (L, W, H)")
    box_count: int = Field(..., ge=1, description="Target number of boxes k")
    min_extent: int = Field(default=1, ge=1, description="Smallest extent m of any piece")
    seed: int = Field(default=0, ge=0)

    @field_validator("dims")
    @classmethod
    def positive_dims(cls, v: Tuple[int, int, int]) -> Tuple[int, int, int]:
        if min(v) < 1:
            raise ValueError("container dimensions must be positive")
        return v


class OracleResult(BaseModel):
    """Best decoder outcome over the whole chromosome space."""

    best_fitness: float
    best_chromosome: Chromosome
    evaluated_count: int


class ViolationKind(str, Enum):
    """Categories of solution defects."""

    BOUNDS = "bounds"
    OVERLAP = "overlap"
    ROTATION = "rotation"
    COVERAGE = "coverage"
    FITNESS = "fitness"
    CONTAINER = "container"
    INFEASIBLE = "infeasible"


class Violation(BaseModel):
    """A single defect found by the validator."""

    kind: ViolationKind
    message: str
    box_ids: List[int] = Field(default_factory=list)


class ValidationReport(BaseModel):
    """Independent re-check of a packing solution."""

    feasible: bool
    fitness: float
    recomputed_fitness: Optional[float] = None
    placement_count: int = 0
    violations: List[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, kind: ViolationKind) -> int:
        return sum(1 for v in self.violations if v.kind == kind)
