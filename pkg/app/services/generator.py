"""Guillotine-cut benchmark instances with a known optimum.

A single container is sliced recursively by axis-aligned planes into k
boxes; packing them back together fills the container exactly, so the best
achievable fill ratio is 1.0.
"""

import logging
import math
from typing import List, Tuple

import numpy as np

from app.models.instance import BoxSpec, ContainerSpec, Instance
from app.models.tools import CutGenSpec

logger = logging.getLogger(__name__)

Piece = Tuple[int, int, int]


class CutGenerationError(ValueError):
    """Raised when a CutGenSpec cannot yield k pieces of the minimum extent."""


def piece_capacity(piece: Piece, min_extent: int) -> int:
    """Most pieces with every extent >= min_extent obtainable from ``piece``."""
    return math.prod(extent // min_extent for extent in piece)


def guillotine_cut(piece: Piece, axis: int, offset: int) -> Tuple[Piece, Piece]:
    """Cut a piece with the plane ``axis = offset`` (0 < offset < extent)."""
    if not 0 < offset < piece[axis]:
        raise ValueError(f"offset {offset} outside (0, {piece[axis]}) on axis {axis}")
    low = list(piece)
    high = list(piece)
    low[axis] = offset
    high[axis] = piece[axis] - offset
    return tuple(low), tuple(high)


def _capacity_preserving_offsets(extent: int, min_extent: int) -> List[int]:
    # Keeping floor(a/m) + floor(b/m) == floor(extent/m) never strands capacity.
    whole = extent // min_extent
    return [
        offset
        for offset in range(min_extent, extent - min_extent + 1)
        if offset // min_extent + (extent - offset) // min_extent == whole
    ]


def generate_cut_layout(spec: CutGenSpec) -> List[Tuple[Piece, Piece]]:
    """Cut the container into k pieces.

    Returns:
        (min corner, dims) of every piece; together they tile the container

    Raises:
        CutGenerationError: If no sequence of cuts can produce k pieces
    """
    capacity = piece_capacity(spec.dims, spec.min_extent)
    if capacity < spec.box_count:
        raise CutGenerationError(
            f"container {spec.dims} yields at most {capacity} pieces with extent >= "
            f"{spec.min_extent}, {spec.box_count} requested"
        )

    rng = np.random.default_rng(spec.seed)
    pieces: List[Tuple[Piece, Piece]] = [((0, 0, 0), tuple(spec.dims))]
    while len(pieces) < spec.box_count:
        cuttable = [
            index
            for index, (_, dims) in enumerate(pieces)
            if any(extent >= 2 * spec.min_extent for extent in dims)
        ]
        index = cuttable[int(rng.integers(len(cuttable)))]
        corner, dims = pieces[index]
        axes = [axis for axis in range(3) if dims[axis] >= 2 * spec.min_extent]
        axis = axes[int(rng.integers(len(axes)))]
        offsets = _capacity_preserving_offsets(dims[axis], spec.min_extent)
        offset = offsets[int(rng.integers(len(offsets)))]
        low, high = guillotine_cut(dims, axis, offset)
        high_corner = list(corner)
        high_corner[axis] += offset
        pieces[index:index + 1] = [(corner, low), (tuple(high_corner), high)]

    logger.debug("Cut %s into %d pieces (seed %d)", spec.dims, len(pieces), spec.seed)
    return pieces


def generate_cut_instance(spec: CutGenSpec, name: str = "cut") -> Instance:
    """Build a guillotine-cut instance.

    Args:
        spec: Container dims, box count k, minimum extent m and seed
        name: Instance label

    Returns:
        Instance with k boxes, ids in cut order, and the single original
        container; packing them back fills it exactly

    Raises:
        CutGenerationError: If no sequence of cuts can produce k pieces
    """
    pieces = generate_cut_layout(spec)
    return Instance(
        boxes=tuple(
            BoxSpec(id=i, length=l, width=w, height=h)
            for i, (_, (l, w, h)) in enumerate(pieces, start=1)
        ),
        containers=(
            ContainerSpec(id=1, length=spec.dims[0], width=spec.dims[1], height=spec.dims[2]),
        ),
        name=name,
    )
