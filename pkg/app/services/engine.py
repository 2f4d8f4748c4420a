"""Coordinator/worker generation loop.

Each generation runs in two phases separated by a barrier:

1. The coordinator ranks the whole population, emits the elite pass-through
   pairs and fills the mating pool by tournament (single-threaded; it needs
   every individual).
2. The pairs are fanned out to a pool of evaluators that cross, mutate and
   decode concurrently. Results are gathered in pair-index order, so the
   next population does not depend on worker count or completion order.

Every task draws from its own stream derived from (seed, generation, pair),
which makes runs reproducible and resumable from any checkpoint.
"""

import logging
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from functools import partial
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

from app.models.chromosome import Chromosome
from app.models.genetic import GaConfig, Individual, MatingPair
from app.models.instance import Instance
from app.models.packing import PackingSolution
from app.models.run_state import GenerationStats, RunResult, RunState
from app.services.checkpoint import CheckpointStore
from app.services.genetic import evaluate, plan_generation, seed_population, vary_and_evaluate
from app.services.packer import decode
from app.services.streams import coordinator_stream, derive_stream

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, str, Optional[str]], None]
ResumePoint = Union[int, str, None]

Mapper = Callable[[Callable, Sequence], List]

# Evaluator processes are spawned, never forked
WORKER_CONTEXT = multiprocessing.get_context("spawn")


def _evaluate_task(instance: Instance, config: GaConfig, chromosome: Chromosome) -> Individual:
    return evaluate(chromosome, instance, config.kb, config.ke)


def _vary_task(instance: Instance, config: GaConfig, task: Tuple[int, int, MatingPair]) -> List[Individual]:
    generation, pair_index, pair = task
    rng = derive_stream(config.seed, generation, pair_index)
    return vary_and_evaluate(pair, instance, config, rng)


def generation_stats(generation: int, population: Sequence[Individual], elapsed: float) -> GenerationStats:
    fitnesses = [ind.fitness for ind in population]
    return GenerationStats(
        generation=generation,
        best=max(fitnesses),
        mean=sum(fitnesses) / len(fitnesses),
        worst=min(fitnesses),
        elapsed_seconds=elapsed,
    )


class GeneticEngine:
    """Runs the genetic algorithm for one instance and configuration."""

    def __init__(
        self,
        instance: Instance,
        config: GaConfig,
        checkpoint_dir: Optional[Path] = None,
        write_checkpoints: bool = True,
    ):
        """Initialize the engine.

        Args:
            instance: Instance to pack
            config: GA and decoder parameters
            checkpoint_dir: Where ``gen_<index>.pop`` files go (None disables them)
            write_checkpoints: Write a checkpoint after every generation
        """
        self.instance = instance
        self.config = config
        self.store = CheckpointStore(checkpoint_dir) if checkpoint_dir is not None else None
        self.write_checkpoints = write_checkpoints and self.store is not None

    @contextmanager
    def _worker_pool(self) -> Iterator[Mapper]:
        """Yield an order-preserving map over the evaluator pool."""
        if self.config.workers == 1:
            yield lambda fn, items: [fn(item) for item in items]
            return

        with ProcessPoolExecutor(max_workers=self.config.workers, mp_context=WORKER_CONTEXT) as executor:
            def mapper(fn, items):
                chunk = max(1, len(items) // (self.config.workers * 4))
                return list(executor.map(fn, items, chunksize=chunk))

            yield mapper

    def _checkpoint(self, generation: int, population: Sequence[Individual]) -> None:
        if self.write_checkpoints:
            self.store.save(generation, population)

    def _resume(self, state: RunState, resume_from: ResumePoint) -> None:
        if self.store is None:
            raise ValueError("resuming needs a checkpoint directory")
        generation = self.store.latest() if resume_from == "latest" else int(resume_from)
        if generation is None:
            raise ValueError(f"no checkpoints found in {self.store.directory}")

        history = self.store.load_history(generation, self.config.population_size)
        if generation not in history:
            raise FileNotFoundError(self.store.path_for(generation))
        for g in sorted(history):
            population = history[g]
            for individual in population:
                if not individual.chromosome.matches(self.instance):
                    raise ValueError(f"checkpoint gen_{g} does not match the instance dimensions")
            state.observe(population)
        state.generation_index = generation
        logger.info(
            "Resumed from generation %d (best so far %.6f)", generation, state.best_so_far.fitness
        )

    def run(
        self,
        resume_from: ResumePoint = None,
        progress_callback: Optional[ProgressCallback] = None,
    ) -> RunResult:
        """Run the generation loop.

        Args:
            resume_from: Generation index or "latest" to continue from a
                checkpoint, None to start fresh
            progress_callback: Optional callback(percent, message, detail)

        Returns:
            RunResult with the best individual over all generations and its
            decoded solution
        """
        config = self.config
        run_started = time.perf_counter()
        state = RunState()
        history: List[GenerationStats] = []
        stopped_early = False

        with self._worker_pool() as mapper:
            if resume_from is None:
                started = time.perf_counter()
                chromosomes = seed_population(
                    self.instance, config.population_size, coordinator_stream(config.seed, 0)
                )
                population = mapper(partial(_evaluate_task, self.instance, config), chromosomes)
                state.observe(population)
                self._checkpoint(0, population)
                history.append(generation_stats(0, population, time.perf_counter() - started))
                logger.info(
                    "Generation 0: best %.6f, mean %.6f", history[-1].best, history[-1].mean
                )
            else:
                self._resume(state, resume_from)

            for generation in range(state.generation_index + 1, config.generations + 1):
                if config.early_stop and state.stagnant_generations >= config.early_stop:
                    stopped_early = True
                    logger.info(
                        "Stopping early after %d stagnant generations", state.stagnant_generations
                    )
                    break

                started = time.perf_counter()
                pairs = plan_generation(
                    state.population, config, coordinator_stream(config.seed, generation)
                )
                tasks = [(generation, index, pair) for index, pair in enumerate(pairs)]
                groups = mapper(partial(_vary_task, self.instance, config), tasks)
                population = [individual for group in groups for individual in group]

                state.observe(population)
                state.generation_index = generation
                self._checkpoint(generation, population)

                stats = generation_stats(generation, population, time.perf_counter() - started)
                history.append(stats)
                logger.info(
                    "Generation %d: best %.6f, mean %.6f, best so far %.6f (%.3fs)",
                    generation,
                    stats.best,
                    stats.mean,
                    state.best_so_far.fitness,
                    stats.elapsed_seconds,
                )
                if progress_callback:
                    progress_callback(
                        int(100 * generation / max(1, config.generations)),
                        f"Generation {generation}/{config.generations}",
                        f"best {state.best_so_far.fitness:.6f}",
                    )

        best = state.best_so_far
        solution = decode(best.chromosome, self.instance, config.kb, config.ke)
        if progress_callback:
            progress_callback(100, "Completed", f"best {best.fitness:.6f}")

        return RunResult(
            best=best,
            solution=solution,
            history=history,
            generations_run=state.generation_index,
            stopped_early=stopped_early,
            elapsed_seconds=time.perf_counter() - run_started,
        )


def run(
    instance: Instance,
    config: GaConfig,
    checkpoint_dir: Optional[Path] = None,
    resume_from: ResumePoint = None,
) -> Tuple[Individual, PackingSolution]:
    """Convenience wrapper returning (best individual, decoded solution)."""
    result = GeneticEngine(instance, config, checkpoint_dir).run(resume_from=resume_from)
    return result.best, result.solution
