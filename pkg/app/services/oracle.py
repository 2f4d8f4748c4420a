"""Exhaustive search over the decoder's chromosome space for tiny instances."""

import itertools
import logging
import math

from app.models.chromosome import Chromosome
from app.models.instance import Instance
from app.models.tools import OracleResult
from app.services.packer import DEFAULT_KB, DEFAULT_KE, decode

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_LIMIT = 50_000


class OracleLimitError(ValueError):
    """Raised when M!·N! exceeds the evaluation guard."""


def chromosome_space_size(instance: Instance) -> int:
    return math.factorial(instance.box_count) * math.factorial(instance.container_count)


def run_oracle(
    instance: Instance,
    kb: int = DEFAULT_KB,
    ke: int = DEFAULT_KE,
    limit: int = DEFAULT_ORACLE_LIMIT,
) -> OracleResult:
    """Decode every chromosome in lexicographic (BPS, CLS) order.

    Returns:
        The maximum fitness and the first chromosome reaching it

    Raises:
        OracleLimitError: If M!·N! is above ``limit``
    """
    space = chromosome_space_size(instance)
    if space > limit:
        raise OracleLimitError(
            f"{instance.box_count}!·{instance.container_count}! = {space} chromosomes exceeds limit {limit}"
        )

    best_fitness = -1.0
    best_chromosome = None
    evaluated = 0
    box_ids = range(1, instance.box_count + 1)
    container_ids = range(1, instance.container_count + 1)
    for bps in itertools.permutations(box_ids):
        for cls in itertools.permutations(container_ids):
            chromosome = Chromosome(bps=bps, cls=cls)
            value = decode(chromosome, instance, kb, ke).fitness
            evaluated += 1
            if value > best_fitness:
                best_fitness, best_chromosome = value, chromosome

    logger.info("Oracle evaluated %d chromosomes, best %.6f", evaluated, best_fitness)
    return OracleResult(best_fitness=best_fitness, best_chromosome=best_chromosome, evaluated_count=evaluated)
