"""Best-matching heuristic packing strategy.

Decodes a chromosome into a packing: boxes are taken in BPS order, a window
of the first ``kb`` unpacked boxes is matched against windows of ``ke``
priority-ordered empty maximal spaces, and the (box, space, orientation)
candidate with the largest fill ratio is placed at the space's min vertex.
When no opened container admits a candidate the next container in CLS order
is opened.
"""

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.models.chromosome import Chromosome
from app.models.instance import BoxSpec, Instance
from app.models.packing import DecodeStep, Ems, Orientation, PackingSolution, Placement
from app.services.ems import initial_ems, update_ems_list

logger = logging.getLogger(__name__)

DEFAULT_KB = 3
DEFAULT_KE = 5


def orientations(box: BoxSpec) -> List[Orientation]:
    """All six axis permutations of a box, duplicates kept.

    Index order: 0 (l,w,h), 1 (l,h,w), 2 (w,l,h), 3 (w,h,l), 4 (h,l,w), 5 (h,w,l).
    """
    return [
        Orientation(index, dims)
        for index, dims in enumerate(itertools.permutations(box.dims))
    ]


def fits(space: Ems, orientation: Orientation) -> bool:
    """True if the oriented box fits inside the space's extent."""
    dx, dy, dz = space.extent
    l, w, h = orientation.dims
    return l <= dx and w <= dy and h <= dz


def placement_margin_key(space: Ems, orientation: Orientation) -> Tuple[int, int, int]:
    """Ascending-sorted margins to the three far faces; smaller is better."""
    dx, dy, dz = space.extent
    l, w, h = orientation.dims
    return tuple(sorted((dx - l, dy - w, dz - h)))


class _Candidate:
    """A feasible (box, space, orientation) triple with its ranking data."""

    __slots__ = ("box_volume", "space_volume", "tie_key", "box_id", "space", "orientation")

    def __init__(self, box_id, box_volume, space, space_rank, orientation, bps_position):
        self.box_id = box_id
        self.box_volume = box_volume
        self.space = space
        self.space_volume = space.volume
        self.orientation = orientation
        self.tie_key = (
            placement_margin_key(space, orientation),
            bps_position,
            space_rank,
            orientation.index,
        )

    def beats(self, other: "_Candidate") -> bool:
        """Larger fill ratio wins (exact integer cross-multiplication), then the tie key."""
        lhs = self.box_volume * other.space_volume
        rhs = other.box_volume * self.space_volume
        if lhs != rhs:
            return lhs > rhs
        return self.tie_key < other.tie_key


class BestMatchPacker:
    """One-shot decoder for a single chromosome.

    Iterate ``steps()`` to observe every placement, or call ``pack()``.
    """

    def __init__(self, instance: Instance, chromosome: Chromosome, kb: int = DEFAULT_KB, ke: int = DEFAULT_KE):
        if kb < 1 or ke < 1:
            raise ValueError(f"kb and ke must be positive (got kb={kb}, ke={ke})")
        if not chromosome.matches(instance):
            raise ValueError(
                f"chromosome sizes ({len(chromosome.bps)}, {len(chromosome.cls)}) do not match "
                f"instance ({instance.box_count}, {instance.container_count})"
            )
        self.instance = instance
        self.chromosome = chromosome
        self.kb = kb
        self.ke = ke

        boxes = instance.box_index()
        self._containers = instance.container_index()
        self._volumes = {box_id: box.volume for box_id, box in boxes.items()}
        self._orientations = {box_id: orientations(box) for box_id, box in boxes.items()}

        self._unpacked: List[int] = list(chromosome.bps)
        self._pending_containers: List[int] = list(chromosome.cls)
        self._opened: List[int] = []
        self._spaces: Dict[int, List[Ems]] = {}
        self.placements: List[Placement] = []
        self.feasible: Optional[bool] = None

    def _best_candidate(self, spaces: Sequence[Ems], first_rank: int) -> Optional[_Candidate]:
        best: Optional[_Candidate] = None
        for bps_position, box_id in enumerate(self._unpacked[: self.kb]):
            volume = self._volumes[box_id]
            for offset, space in enumerate(spaces):
                for orientation in self._orientations[box_id]:
                    if not fits(space, orientation):
                        continue
                    candidate = _Candidate(
                        box_id, volume, space, first_rank + offset, orientation, bps_position
                    )
                    if best is None or candidate.beats(best):
                        best = candidate
        return best

    def _search_opened(self) -> Optional[_Candidate]:
        for container_id in self._opened:
            spaces = self._spaces[container_id]
            for start in range(0, len(spaces), self.ke):
                candidate = self._best_candidate(spaces[start:start + self.ke], start)
                if candidate is not None:
                    return candidate
        return None

    def _open_next(self) -> Optional[_Candidate]:
        while self._pending_containers:
            container_id = self._pending_containers.pop(0)
            space = initial_ems(self._containers[container_id])
            self._opened.append(container_id)
            self._spaces[container_id] = [space]
            candidate = self._best_candidate([space], 0)
            if candidate is not None:
                return candidate
        return None

    def _place(self, candidate: _Candidate) -> Placement:
        space = candidate.space
        placement = Placement(
            candidate.box_id, space.container_id, space.min, candidate.orientation.dims
        )
        self._spaces[space.container_id] = update_ems_list(
            self._spaces[space.container_id], placement
        )
        self._unpacked.remove(candidate.box_id)
        self.placements.append(placement)
        return placement

    def steps(self) -> Iterator[DecodeStep]:
        """Run the decoder, yielding a snapshot after every placement.

        Sets ``feasible`` once the generator is exhausted.
        """
        while self._unpacked:
            candidate = self._search_opened()
            if candidate is None:
                candidate = self._open_next()
            if candidate is None:
                self.feasible = False
                return
            placement = self._place(candidate)
            yield DecodeStep(
                step=len(self.placements),
                placement=placement,
                opened_containers=tuple(self._opened),
                spaces={cid: tuple(self._spaces[cid]) for cid in self._opened},
            )
        self.feasible = True

    def solution(self) -> PackingSolution:
        """Build the solution once decoding has finished."""
        if self.feasible is None:
            raise RuntimeError("decoder has not finished; exhaust steps() first")
        solution = PackingSolution.model_construct(
            placements=list(self.placements),
            opened_containers=list(self._opened),
            feasible=self.feasible,
            fitness=0.0,
        )
        solution.fitness = fitness(solution, self.instance)
        return solution

    def pack(self) -> PackingSolution:
        for _ in self.steps():
            pass
        return self.solution()


def decode(chromosome: Chromosome, instance: Instance, kb: int = DEFAULT_KB, ke: int = DEFAULT_KE) -> PackingSolution:
    """Decode a chromosome with the best-matching heuristic.

    Infeasibility (some box cannot be placed even with every container open)
    is a normal result with ``feasible=False`` and fitness 0.
    """
    return BestMatchPacker(instance, chromosome, kb, ke).pack()


def fitness(solution: PackingSolution, instance: Instance) -> float:
    """Fill ratio: total box volume over total volume of opened containers.

    Infeasible solutions score 0.
    """
    if not solution.feasible:
        return 0.0
    containers = instance.container_index()
    capacity = sum(containers[cid].volume for cid in solution.opened_containers)
    return instance.total_box_volume / capacity


def container_utilization(solution: PackingSolution, instance: Instance) -> List[Tuple[int, int, int]]:
    """Per opened container: (container id, packed volume, capacity).

    Raises:
        ValueError: If the solution names a container the instance lacks
    """
    containers = instance.container_index()
    unknown = sorted(
        ({p.container_id for p in solution.placements} | set(solution.opened_containers)) - set(containers)
    )
    if unknown:
        raise ValueError(f"solution names containers not in the instance: {unknown}")
    used = {cid: 0 for cid in solution.opened_containers}
    for p in solution.placements:
        used[p.container_id] = used.get(p.container_id, 0) + p.dims[0] * p.dims[1] * p.dims[2]
    return [(cid, used[cid], containers[cid].volume) for cid in solution.opened_containers]
