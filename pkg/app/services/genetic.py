"""Genetic operators over (BPS, CLS) chromosomes.

Selection is a size-2 tournament with elitism; variation is a two-cut order
crossover applied to each chromosome part independently, followed by a
swap mutation.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from app.models.chromosome import Chromosome
from app.models.genetic import ELITE_MARKER, GaConfig, Individual, MatingPair
from app.models.instance import Instance
from app.services.packer import decode

logger = logging.getLogger(__name__)

Cuts = Tuple[int, int]

# Special chromosome BPS orderings, all descending: volume, length, width, height.
SPECIAL_ORDERINGS = (
    ("volume", lambda b: b.volume),
    ("length", lambda b: b.length),
    ("width", lambda b: b.width),
    ("height", lambda b: b.height),
)


def _random_permutation(n: int, rng: np.random.Generator) -> Tuple[int, ...]:
    return tuple((rng.permutation(n) + 1).tolist())


def seed_population(instance: Instance, population_size: int, rng: np.random.Generator) -> List[Chromosome]:
    """Create the initial population.

    The first four chromosomes order boxes by descending volume, length,
    width and height (stable, so ties keep id order), each with a random
    CLS. The rest are fully random.
    """
    if population_size < len(SPECIAL_ORDERINGS):
        raise ValueError(f"population_size must be at least {len(SPECIAL_ORDERINGS)}")

    by_id = sorted(instance.boxes, key=lambda b: b.id)
    population: List[Chromosome] = []
    for _, measure in SPECIAL_ORDERINGS:
        bps = tuple(b.id for b in sorted(by_id, key=measure, reverse=True))
        population.append(Chromosome(bps=bps, cls=_random_permutation(instance.container_count, rng)))

    while len(population) < population_size:
        population.append(
            Chromosome(
                bps=_random_permutation(instance.box_count, rng),
                cls=_random_permutation(instance.container_count, rng),
            )
        )
    return population


def evaluate(chromosome: Chromosome, instance: Instance, kb: int, ke: int) -> Individual:
    """Decode a chromosome and wrap it with its fitness."""
    return Individual(chromosome=chromosome, fitness=decode(chromosome, instance, kb, ke).fitness)


def tournament_select(population: Sequence[Individual], win_prob: float, rng: np.random.Generator) -> Chromosome:
    """Size-2 tournament.

    Two distinct individuals are drawn uniformly; the fitter one wins with
    probability ``win_prob``, otherwise the weaker one. Equal fitness picks
    either with equal chance.
    """
    if len(population) < 2:
        raise ValueError("tournament needs at least two individuals")
    i, j = rng.choice(len(population), size=2, replace=False).tolist()
    first, second = population[i], population[j]
    draw = rng.random()
    if first.fitness == second.fitness:
        return (first if draw < 0.5 else second).chromosome
    better, weaker = (first, second) if first.fitness > second.fitness else (second, first)
    return (better if draw < win_prob else weaker).chromosome


def order_crossover(donor: Sequence[int], filler: Sequence[int], i: int, j: int) -> Tuple[int, ...]:
    """Two-cut order crossover for one gene sequence.

    Positions i+1..j (1-indexed) come from ``donor``; the remaining positions,
    starting at j+1 and wrapping around, take the genes of ``filler`` read
    circularly from position j+1, skipping genes already present.
    """
    n = len(donor)
    if not 0 <= i < j <= n:
        raise ValueError(f"invalid cut points ({i}, {j}) for length {n}")
    child: List[int] = [0] * n
    child[i:j] = donor[i:j]
    kept = set(donor[i:j])
    fill = (filler[(j + k) % n] for k in range(n))
    positions = ((j + k) % n for k in range(n - (j - i)))
    for position in positions:
        gene = next(fill)
        while gene in kept:
            gene = next(fill)
        child[position] = gene
        kept.add(gene)
    return tuple(child)


def crossover(p1: Chromosome, p2: Chromosome, cuts_bps: Cuts, cuts_cls: Cuts) -> Tuple[Chromosome, Chromosome]:
    """Produce two children; O2 swaps the parents' roles."""
    o1 = Chromosome(
        bps=order_crossover(p1.bps, p2.bps, *cuts_bps),
        cls=order_crossover(p1.cls, p2.cls, *cuts_cls),
    )
    o2 = Chromosome(
        bps=order_crossover(p2.bps, p1.bps, *cuts_bps),
        cls=order_crossover(p2.cls, p1.cls, *cuts_cls),
    )
    return o1, o2


def random_cuts(length: int, rng: np.random.Generator) -> Cuts:
    """Two distinct cut points 0 <= i < j <= length."""
    i, j = sorted(rng.choice(length + 1, size=2, replace=False).tolist())
    return i, j


def swap_genes(genes: Sequence[int], a: int, b: int) -> Tuple[int, ...]:
    """Swap two 0-indexed positions."""
    swapped = list(genes)
    swapped[a], swapped[b] = swapped[b], swapped[a]
    return tuple(swapped)


def _random_swap(genes: Tuple[int, ...], rng: np.random.Generator) -> Tuple[int, ...]:
    if len(genes) < 2:
        return genes
    a, b = rng.choice(len(genes), size=2, replace=False).tolist()
    return swap_genes(genes, a, b)


def mutate(chromosome: Chromosome, mutation_prob: float, rng: np.random.Generator) -> Chromosome:
    """With probability ``mutation_prob`` swap two genes in BPS and two in CLS."""
    if rng.random() >= mutation_prob:
        return chromosome
    return Chromosome(bps=_random_swap(chromosome.bps, rng), cls=_random_swap(chromosome.cls, rng))


def rank_population(population: Sequence[Individual]) -> List[Individual]:
    """Descending fitness, ties by ascending chromosome text."""
    return sorted(population, key=lambda ind: ind.rank_key())


def plan_generation(population: Sequence[Individual], config: GaConfig, rng: np.random.Generator) -> List[MatingPair]:
    """Coordinator step: elite pass-through pairs followed by parent pairs.

    Args:
        population: All Z individuals of the current generation
        config: Run configuration (Z, E, w)
        rng: Coordinator stream for this generation

    Returns:
        E elite pairs then (Z - E) / 2 parent pairs
    """
    if len(population) != config.population_size:
        raise ValueError(
            f"population has {len(population)} individuals, expected {config.population_size}"
        )
    ranked = rank_population(population)
    pairs = [
        MatingPair(first=elite.chromosome, second=ELITE_MARKER, elite_fitness=elite.fitness)
        for elite in ranked[: config.elite_count]
    ]
    pool = [
        tournament_select(ranked, config.tournament_win_prob, rng)
        for _ in range(config.population_size - config.elite_count)
    ]
    pairs.extend(MatingPair(first=pool[k], second=pool[k + 1]) for k in range(0, len(pool), 2))
    return pairs


def vary_and_evaluate(pair: MatingPair, instance: Instance, config: GaConfig, rng: np.random.Generator) -> List[Individual]:
    """Worker step for one mating pair.

    Elite pairs return the elite unchanged. Parent pairs pass through with
    probability prob_c (no mutation either); otherwise they are crossed and
    both children mutated. Every returned chromosome other than an elite is
    decoded for its fitness.
    """
    if pair.is_elite:
        return [Individual(chromosome=pair.first, fitness=pair.elite_fitness)]

    if rng.random() < config.prob_c:
        children = (pair.first, pair.second)
    else:
        cuts_bps = random_cuts(len(pair.first.bps), rng)
        cuts_cls = random_cuts(len(pair.first.cls), rng)
        o1, o2 = crossover(pair.first, pair.second, cuts_bps, cuts_cls)
        children = (mutate(o1, config.mutation_prob, rng), mutate(o2, config.mutation_prob, rng))

    return [evaluate(child, instance, config.kb, config.ke) for child in children]
