"""Deterministic per-task random streams.

Every unit of work gets its own generator derived from (root seed,
generation, pair index) through numpy's SeedSequence spawn keys, so results
do not depend on which worker runs what or in which order.
"""

import numpy as np

# Pair index reserved for the coordinator's own stream in each generation.
COORDINATOR_STREAM = 2**32 - 1


def derive_stream(root_seed: int, generation_index: int, pair_index: int) -> np.random.Generator:
    """Build the random generator for one (generation, pair) task.

    Args:
        root_seed: Run seed from GaConfig
        generation_index: Generation the task belongs to
        pair_index: Mating-pair index, or COORDINATOR_STREAM

    Returns:
        A fresh PCG64 generator; a pure function of the three inputs
    """
    if root_seed < 0 or generation_index < 0 or pair_index < 0:
        raise ValueError("stream coordinates must be non-negative")
    sequence = np.random.SeedSequence(entropy=root_seed, spawn_key=(generation_index, pair_index))
    return np.random.Generator(np.random.PCG64(sequence))


def coordinator_stream(root_seed: int, generation_index: int) -> np.random.Generator:
    """The coordinator's selection stream for a generation."""
    return derive_stream(root_seed, generation_index, COORDINATOR_STREAM)
