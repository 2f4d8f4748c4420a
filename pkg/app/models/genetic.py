"""Models for the genetic algorithm: run configuration, individuals and mating pairs."""

from typing import Optional

from pydantic import BaseModel, Field, model_validator

from app.models.chromosome import Chromosome, serialize_chromosome

# Placeholder second parent marking an elite pass-through pair.
ELITE_MARKER = None


class GaConfig(BaseModel):
    """Genetic algorithm and decoder parameters for one run."""

    model_config = {"frozen": True, "extra": "forbid"}

    population_size: int = Field(default=100, ge=4, description="Z, room for the four special chromosomes")
    elite_count: int = Field(default=2, ge=0, description="E, best individuals copied unchanged")
    prob_c: float = Field(default=0.1, ge=0.0, le=1.0, description="Pair pass-through probability")
    mutation_prob: float = Field(default=0.2, ge=0.0, le=1.0, description="Pm, per-chromosome swap probability")
    kb: int = Field(default=3, ge=1, description="Leading unpacked boxes considered per step")
    ke: int = Field(default=5, ge=1, description="EMS window size")
    generations: int = Field(default=100, ge=0, description="G, generation loop count")
    tournament_win_prob: float = Field(default=0.9, gt=0.5, le=1.0, description="w, chance the fitter entrant wins")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Root seed for every derived stream")
    workers: int = Field(default=1, ge=1, description="Evaluator worker count")
    early_stop: int = Field(default=0, ge=0, description="Stop after this many stagnant generations (0 = off)")

    @model_validator(mode="after")
    def check_population_split(self) -> "GaConfig":
        """Elites must leave an even, non-empty remainder for mating pairs."""
        if self.elite_count >= self.population_size:
            raise ValueError(
                f"elite_count ({self.elite_count}) must be less than population_size ({self.population_size})"
            )
        if (self.population_size - self.elite_count) % 2:
            raise ValueError(
                f"population_size - elite_count ({self.population_size - self.elite_count}) must be even"
            )
        return self


class Individual(BaseModel):
    """A chromosome together with its decoded fitness."""

    model_config = {"frozen": True}

    chromosome: Chromosome
    fitness: float = Field(..., ge=0.0, le=1.0)

    @property
    def key(self) -> str:
        """Serialized chromosome, the checkpoint record key."""
        return serialize_chromosome(self.chromosome)

    def rank_key(self):
        """Sort key: descending fitness, ties by ascending chromosome text."""
        return (-self.fitness, self.key)


class MatingPair(BaseModel):
    """Unit of work handed to an evaluator.

    An elite pass-through pair has ``second`` set to ELITE_MARKER and carries
    the elite's already-known fitness.
    """

    model_config = {"frozen": True}

    first: Chromosome
    second: Optional[Chromosome] = ELITE_MARKER
    elite_fitness: Optional[float] = None

    @property
    def is_elite(self) -> bool:
        return self.second is ELITE_MARKER

    @model_validator(mode="after")
    def check_elite_fitness(self) -> "MatingPair":
        """Elite pairs carry a fitness, parent pairs do not."""
        if self.is_elite and self.elite_fitness is None:
            raise ValueError("elite pair needs elite_fitness")
        if not self.is_elite and self.elite_fitness is not None:
            raise ValueError("parent pair must not carry elite_fitness")
        return self
