"""Independent solution checker.

Re-derives every geometric property from the raw placement records with
numpy interval arithmetic; nothing here is shared with the decoder.
"""

import logging
from collections import Counter
from typing import List

import numpy as np

from app.models.instance import Instance
from app.models.packing import PackingSolution
from app.models.tools import ValidationReport, Violation, ViolationKind

logger = logging.getLogger(__name__)


def _check_containers(solution: PackingSolution, instance: Instance, violations: List[Violation]) -> None:
    known = {c.id for c in instance.containers}
    counts = Counter(solution.opened_containers)
    for cid, count in counts.items():
        if cid not in known:
            violations.append(Violation(kind=ViolationKind.CONTAINER, message=f"unknown container {cid} opened"))
        elif count > 1:
            violations.append(Violation(kind=ViolationKind.CONTAINER, message=f"container {cid} opened {count} times"))
    for p in solution.placements:
        if p.container_id not in counts:
            violations.append(
                Violation(
                    kind=ViolationKind.CONTAINER,
                    message=f"box {p.box_id} placed in unopened container {p.container_id}",
                    box_ids=[p.box_id],
                )
            )


def _check_boxes(solution: PackingSolution, instance: Instance, violations: List[Violation]) -> None:
    box_dims = {b.id: sorted(b.dims) for b in instance.boxes}
    container_dims = {c.id: np.array(c.dims, dtype=np.int64) for c in instance.containers}

    for p in solution.placements:
        if p.box_id not in box_dims:
            violations.append(Violation(kind=ViolationKind.COVERAGE, message=f"unknown box {p.box_id}", box_ids=[p.box_id]))
            continue
        if sorted(p.dims) != box_dims[p.box_id]:
            violations.append(
                Violation(
                    kind=ViolationKind.ROTATION,
                    message=f"box {p.box_id} placed as {p.dims}, not a rotation of {tuple(box_dims[p.box_id])}",
                    box_ids=[p.box_id],
                )
            )
        if p.container_id in container_dims:
            low = np.array(p.position, dtype=np.int64)
            high = low + np.array(p.dims, dtype=np.int64)
            if (low < 0).any() or (high > container_dims[p.container_id]).any():
                violations.append(
                    Violation(
                        kind=ViolationKind.BOUNDS,
                        message=f"box {p.box_id} at {p.position} size {p.dims} leaves container {p.container_id}",
                        box_ids=[p.box_id],
                    )
                )

    placed = Counter(p.box_id for p in solution.placements)
    for box_id, count in sorted(placed.items()):
        if count > 1:
            violations.append(
                Violation(kind=ViolationKind.COVERAGE, message=f"box {box_id} placed {count} times", box_ids=[box_id])
            )
    if solution.feasible:
        for box_id in sorted(set(box_dims) - set(placed)):
            violations.append(
                Violation(kind=ViolationKind.COVERAGE, message=f"box {box_id} not placed", box_ids=[box_id])
            )


def _check_overlaps(solution: PackingSolution, violations: List[Violation]) -> None:
    by_container = {}
    for p in solution.placements:
        by_container.setdefault(p.container_id, []).append(p)

    for cid, placements in by_container.items():
        if len(placements) < 2:
            continue
        low = np.array([p.position for p in placements], dtype=np.int64)
        high = low + np.array([p.dims for p in placements], dtype=np.int64)
        # Open interiors overlap iff every axis interval overlaps strictly.
        separated = (low[:, None, :] >= high[None, :, :]) | (low[None, :, :] >= high[:, None, :])
        overlapping = ~separated.any(axis=2)
        rows, cols = np.nonzero(np.triu(overlapping, k=1))
        for i, j in zip(rows.tolist(), cols.tolist()):
            a, b = placements[i], placements[j]
            violations.append(
                Violation(
                    kind=ViolationKind.OVERLAP,
                    message=f"boxes {a.box_id} and {b.box_id} overlap in container {cid}",
                    box_ids=[a.box_id, b.box_id],
                )
            )


def validate_solution(instance: Instance, solution: PackingSolution) -> ValidationReport:
    """Check bounds, disjointness, rotations, coverage and the fitness value.

    Returns:
        ValidationReport listing every violation found (empty when valid)
    """
    violations: List[Violation] = []
    _check_containers(solution, instance, violations)
    _check_boxes(solution, instance, violations)
    _check_overlaps(solution, violations)

    recomputed = 0.0
    if solution.feasible:
        capacities = {c.id: c.volume for c in instance.containers}
        capacity = sum(capacities.get(cid, 0) for cid in set(solution.opened_containers))
        box_volume = int(np.prod(np.array([b.dims for b in instance.boxes], dtype=np.int64), axis=1).sum())
        recomputed = box_volume / capacity if capacity else 0.0
    else:
        violations.append(Violation(kind=ViolationKind.INFEASIBLE, message="solution is marked infeasible"))

    if solution.fitness != recomputed:
        violations.append(
            Violation(
                kind=ViolationKind.FITNESS,
                message=f"fitness {solution.fitness!r} does not match recomputed {recomputed!r}",
            )
        )

    if violations:
        logger.info("Validation found %d violation(s)", len(violations))
    return ValidationReport(
        feasible=solution.feasible,
        fitness=solution.fitness,
        recomputed_fitness=recomputed,
        placement_count=len(solution.placements),
        violations=violations,
    )
