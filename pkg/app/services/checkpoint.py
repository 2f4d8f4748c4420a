"""Per-generation population checkpoints.

Each generation is written to ``gen_<index>.pop``: one
``<chromosome_text>\\t<fitness>`` record per line in population order, the
same key/value shape the generation loop hands from one round to the next.
Files are written to a temp name and renamed, so a checkpoint is either
complete or absent.
"""

import logging
import os
import re
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from app.models.chromosome import ChromosomeFormatError, parse_chromosome
from app.models.genetic import Individual
from app.models.packing import format_fitness
from app.models.run_state import CheckpointRecord

logger = logging.getLogger(__name__)

CHECKPOINT_PATTERN = re.compile(r"^gen_(\d+)\.pop$")


class CheckpointFormatError(ValueError):
    """Raised for a malformed checkpoint file."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


def checkpoint_name(generation_index: int) -> str:
    return f"gen_{generation_index}.pop"


def format_checkpoint(population: Sequence[Individual]) -> str:
    """Checkpoint body: records joined by newlines, no trailing newline."""
    return "\n".join(f"{ind.key}\t{format_fitness(ind.fitness)}" for ind in population)


def write_checkpoint(path: Path, generation_index: int, population: Sequence[Individual]) -> Path:
    """Atomically write one generation's population.

    Args:
        path: Checkpoint directory, or an explicit ``.pop`` file path
        generation_index: Generation being saved (names the file in a directory)
        population: Individuals in population order

    Returns:
        Path of the written file
    """
    path = Path(path)
    target = path if path.suffix == ".pop" else path / checkpoint_name(generation_index)
    target.parent.mkdir(parents=True, exist_ok=True)

    fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(format_checkpoint(population))
        os.replace(tmp_name, target)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise

    logger.debug("Wrote checkpoint %s (%d records)", target, len(population))
    return target


def parse_checkpoint(text: str, expected_size: Optional[int] = None) -> List[CheckpointRecord]:
    """Parse checkpoint text into records.

    Raises:
        CheckpointFormatError: On a malformed record or a record count that
            differs from ``expected_size``
    """
    lines = text.split("\n") if text else []
    if lines and lines[-1] == "":
        lines.pop()
    records: List[CheckpointRecord] = []
    for line_number, line in enumerate(lines, start=1):
        if not line:
            raise CheckpointFormatError("empty record", line_number)
        key, sep, value = line.partition("\t")
        if not sep:
            raise CheckpointFormatError("missing tab separator", line_number)
        try:
            parse_chromosome(key)
            fitness = float(value)
        except (ChromosomeFormatError, ValueError) as e:
            raise CheckpointFormatError(str(e), line_number) from None
        if not 0.0 <= fitness <= 1.0:
            raise CheckpointFormatError(f"fitness {value} outside [0, 1]", line_number)
        records.append(CheckpointRecord(chromosome_text=key, fitness=fitness))

    if expected_size is not None and len(records) != expected_size:
        raise CheckpointFormatError(
            f"checkpoint holds {len(records)} records, expected {expected_size}"
        )
    return records


def read_checkpoint(path: Path, expected_size: Optional[int] = None) -> List[CheckpointRecord]:
    """Read a checkpoint file written by write_checkpoint."""
    with open(path, encoding="utf-8", newline="") as f:
        return parse_checkpoint(f.read(), expected_size)


class CheckpointStore:
    """Directory of per-generation checkpoints for one run."""

    def __init__(self, directory: Path):
        """Initialize the store.

        Args:
            directory: Directory holding ``gen_<index>.pop`` files
        """
        self.directory = Path(directory)

    def path_for(self, generation_index: int) -> Path:
        return self.directory / checkpoint_name(generation_index)

    def save(self, generation_index: int, population: Sequence[Individual]) -> Path:
        return write_checkpoint(self.directory, generation_index, population)

    def load(self, generation_index: int, expected_size: Optional[int] = None) -> List[Individual]:
        records = read_checkpoint(self.path_for(generation_index), expected_size)
        return [record.to_individual() for record in records]

    def generations(self) -> List[int]:
        """Generation indices with a checkpoint present, ascending."""
        if not self.directory.exists():
            return []
        found = []
        for entry in self.directory.iterdir():
            match = CHECKPOINT_PATTERN.match(entry.name)
            if match:
                found.append(int(match.group(1)))
        return sorted(found)

    def latest(self) -> Optional[int]:
        found = self.generations()
        return found[-1] if found else None

    def load_history(self, up_to: int, expected_size: Optional[int] = None) -> Dict[int, List[Individual]]:
        """Load every checkpoint with index <= up_to."""
        return {
            g: self.load(g, expected_size)
            for g in self.generations()
            if g <= up_to
        }
