"""Run-state models for the generation engine and its checkpoints."""

from typing import List, Optional

from pydantic import BaseModel, Field

from app.models.chromosome import Chromosome, parse_chromosome
from app.models.genetic import Individual
from app.models.packing import PackingSolution


class CheckpointRecord(BaseModel):
    """One ``<chromosome_text>\\t<fitness>`` line of a checkpoint file."""

    model_config = {"frozen": True}

    chromosome_text: str
    fitness: float = Field(..., ge=0.0, le=1.0)

    @classmethod
    def from_individual(cls, individual: Individual) -> "CheckpointRecord":
        return cls(chromosome_text=individual.key, fitness=individual.fitness)

    def to_individual(self) -> Individual:
        chromosome: Chromosome = parse_chromosome(self.chromosome_text)
        return Individual(chromosome=chromosome, fitness=self.fitness)


class GenerationStats(BaseModel):
    """Fitness summary and wall-clock for one generation."""

    generation: int
    best: float
    mean: float
    worst: float
    elapsed_seconds: float = 0.0


class RunState(BaseModel):
    """Coordinator state at a generation boundary."""

    generation_index: int = 0
    population: List[Individual] = Field(default_factory=list)
    best_so_far: Optional[Individual] = None
    stagnant_generations: int = 0

    def observe(self, population: List[Individual]) -> bool:
        """Adopt a new population and update best_so_far.

        Returns:
            True if best_so_far strictly improved
        """
        self.population = population
        champion = min(population, key=lambda ind: ind.rank_key())
        if self.best_so_far is None or champion.fitness > self.best_so_far.fitness:
            self.best_so_far = champion
            self.stagnant_generations = 0
            return True
        self.stagnant_generations += 1
        return False


class RunResult(BaseModel):
    """Outcome of GeneticEngine.run."""

    best: Individual
    solution: PackingSolution
    history: List[GenerationStats] = Field(default_factory=list)
    generations_run: int = 0
    stopped_early: bool = False
    elapsed_seconds: float = 0.0
