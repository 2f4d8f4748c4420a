"""Packing models: empty maximal spaces, placements and decoded solutions.

Ems, Orientation and Placement sit on the decoder's hot path, so they are
plain immutable NamedTuples rather than pydantic models.
"""

from typing import Dict, List, NamedTuple, Tuple

import numpy as np
from pydantic import BaseModel, Field

Point = Tuple[int, int, int]


class SolutionFormatError(ValueError):
    """Raised when a solution record cannot be parsed."""


class Ems(NamedTuple):
    """Axis-aligned empty maximal space inside one container.

    Extent is strictly positive in every axis: min < max componentwise.
    """

    container_id: int
    min: Point
    max: Point

    @property
    def extent(self) -> Point:
        return (
            self.max[0] - self.min[0],
            self.max[1] - self.min[1],
            self.max[2] - self.min[2],
        )

    @property
    def volume(self) -> int:
        dx, dy, dz = self.extent
        return dx * dy * dz


class Orientation(NamedTuple):
    """One of the six axis permutations of a box."""

    index: int
    dims: Point


class Placement(NamedTuple):
    """A box placed in a container with its min corner at ``position``."""

    box_id: int
    container_id: int
    position: Point
    dims: Point

    @property
    def max_corner(self) -> Point:
        return (
            self.position[0] + self.dims[0],
            self.position[1] + self.dims[1],
            self.position[2] + self.dims[2],
        )


class PackingSolution(BaseModel):
    """Result of decoding one chromosome."""

    placements: List[Placement] = Field(default_factory=list)
    opened_containers: List[int] = Field(default_factory=list)
    feasible: bool = False
    fitness: float = Field(default=0.0, ge=0.0, le=1.0)

    def placements_by_container(self) -> Dict[int, List[Placement]]:
        """Group placements per opened container, in opening order."""
        grouped: Dict[int, List[Placement]] = {cid: [] for cid in self.opened_containers}
        for p in self.placements:
            grouped.setdefault(p.container_id, []).append(p)
        return grouped


class DecodeStep(NamedTuple):
    """Snapshot emitted by the packer after each placement."""

    step: int
    placement: Placement
    opened_containers: Tuple[int, ...]
    spaces: Dict[int, Tuple[Ems, ...]]


def format_fitness(value: float) -> str:
    """Shortest round-tripping positional decimal, integral values without a trailing ``.0``."""
    return np.format_float_positional(float(value), unique=True, trim="-")


def format_solution(solution: PackingSolution) -> str:
    """Render the stable solution record consumed by ``validate`` and viewers.

    Layout::

        fitness <decimal>
        feasible true|false
        opened <container ids in opening order>
        place <box_id> <container_id> <x> <y> <z> <l'> <w'> <h'>   (one per placement)
    """
    lines = [
        f"fitness {format_fitness(solution.fitness)}",
        f"feasible {'true' if solution.feasible else 'false'}",
        "opened " + " ".join(str(c) for c in solution.opened_containers),
    ]
    for p in solution.placements:
        lines.append(
            "place {} {} {} {} {} {} {} {}".format(p.box_id, p.container_id, *p.position, *p.dims)
        )
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_solution(text: str) -> PackingSolution:
    """Parse a solution record written by format_solution."""
    fitness = None
    feasible = None
    opened: List[int] = []
    placements: List[Placement] = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        try:
            if keyword == "fitness":
                fitness = float(rest)
            elif keyword == "feasible":
                if rest not in ("true", "false"):
                    raise ValueError(f"bad feasible flag {rest!r}")
                feasible = rest == "true"
            elif keyword == "opened":
                opened = [int(v) for v in rest.split()]
            elif keyword == "place":
                values = [int(v) for v in rest.split()]
                if len(values) != 8:
                    raise ValueError("place line needs 8 integers")
                placements.append(
                    Placement(values[0], values[1], tuple(values[2:5]), tuple(values[5:8]))
                )
            else:
                raise ValueError(f"unknown record {keyword!r}")
        except ValueError as e:
            raise SolutionFormatError(f"line {line_number}: {e}") from None

    if fitness is None or feasible is None:
        raise SolutionFormatError("solution record needs 'fitness' and 'feasible' lines")
    if not 0.0 <= fitness <= 1.0:
        raise SolutionFormatError(f"fitness {fitness} outside [0, 1]")
    return PackingSolution(
        placements=placements, opened_containers=opened, feasible=feasible, fitness=fitness
    )
