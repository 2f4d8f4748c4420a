"""Append-only benchmark log of solve runs.

One tab-separated line per run:
``instance  population  elite  generations  seed  best_fitness  wall_clock``.
"""

import logging
from pathlib import Path
from typing import Union

import pandas as pd

from app.models.genetic import GaConfig
from app.models.packing import format_fitness

logger = logging.getLogger(__name__)

RESULT_COLUMNS = [
    "instance",
    "population_size",
    "elite_count",
    "generations",
    "seed",
    "best_fitness",
    "wall_clock",
]


def format_result_line(instance_name: str, config: GaConfig, best_fitness: float, wall_clock: float) -> str:
    fields = [
        instance_name,
        str(config.population_size),
        str(config.elite_count),
        str(config.generations),
        str(config.seed),
        format_fitness(best_fitness),
        f"{wall_clock:.3f}",
    ]
    return "\t".join(fields)


def append_result(
    path: Union[str, Path],
    instance_name: str,
    config: GaConfig,
    best_fitness: float,
    wall_clock: float,
) -> None:
    """Append one run summary, creating the log (and its directory) if needed."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a", encoding="utf-8", newline="\n") as f:
        f.write(format_result_line(instance_name, config, best_fitness, wall_clock) + "\n")
    logger.debug("Appended result for %s to %s", instance_name, path)


def load_results(path: Union[str, Path]) -> pd.DataFrame:
    """Read the results log into a DataFrame with RESULT_COLUMNS."""
    return pd.read_csv(
        path,
        sep="\t",
        header=None,
        names=RESULT_COLUMNS,
        dtype={"instance": str},
    )


def summarize_results(path: Union[str, Path]) -> pd.DataFrame:
    """Per-instance summary: run count, best and mean fitness, mean wall clock.

    Returns:
        DataFrame indexed by instance name, sorted by name
    """
    frame = load_results(path)
    summary = frame.groupby("instance").agg(
        runs=("best_fitness", "size"),
        best_fitness=("best_fitness", "max"),
        mean_fitness=("best_fitness", "mean"),
        mean_wall_clock=("wall_clock", "mean"),
    )
    return summary.sort_index()
