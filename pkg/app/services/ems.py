"""Empty maximal space (EMS) geometry.

Free space inside a container is tracked as the complete set of maximal empty
cuboids. Placing a box runs the difference process: every space the box cuts
into is replaced by up to six face slabs, then degenerate and contained
slabs are dropped so only maximal spaces remain.
"""

from typing import Iterable, List

from app.models.instance import ContainerSpec
from app.models.packing import Ems, Placement


def initial_ems(container: ContainerSpec) -> Ems:
    """The single space covering an empty container."""
    return Ems(container.id, (0, 0, 0), container.dims)


def ems_priority_key(space: Ems):
    """Sort key implementing ems_priority_less.

    Ascending-sorted min-vertex coordinates compared lexicographically, then
    container id, then the raw min vertex, then the max vertex so the order
    is total.
    """
    return (tuple(sorted(space.min)), space.container_id, space.min, space.max)


def ems_priority_less(a: Ems, b: Ems) -> bool:
    """True if ``a`` has strictly higher priority than ``b``."""
    return ems_priority_key(a) < ems_priority_key(b)


def intersects(space: Ems, placement: Placement) -> bool:
    """Open-interval intersection between a space and a placed box."""
    lo = placement.position
    hi = placement.max_corner
    return all(lo[a] < space.max[a] and hi[a] > space.min[a] for a in range(3))


def contains(outer: Ems, inner: Ems) -> bool:
    """True if ``inner`` lies within ``outer`` (same container, closed bounds)."""
    return (
        outer.container_id == inner.container_id
        and all(outer.min[a] <= inner.min[a] and inner.max[a] <= outer.max[a] for a in range(3))
    )


def subtract_box(space: Ems, placement: Placement) -> List[Ems]:
    """Split ``space`` around a placed box into the slabs beyond each box face.

    Returns ``[space]`` unchanged when the box does not cut into it. Zero
    extent slabs are never produced.
    """
    if not intersects(space, placement):
        return [space]

    lo = placement.position
    hi = placement.max_corner
    slabs: List[Ems] = []
    for axis in range(3):
        if lo[axis] > space.min[axis]:
            slab_max = list(space.max)
            slab_max[axis] = lo[axis]
            slabs.append(Ems(space.container_id, space.min, tuple(slab_max)))
        if hi[axis] < space.max[axis]:
            slab_min = list(space.min)
            slab_min[axis] = hi[axis]
            slabs.append(Ems(space.container_id, tuple(slab_min), space.max))
    return slabs


def prune_contained(spaces: Iterable[Ems]) -> List[Ems]:
    """Drop duplicates and every space contained in another one."""
    unique = list(dict.fromkeys(spaces))
    # Larger spaces first: a space can only be contained in one at least as big.
    unique.sort(key=lambda s: s.volume, reverse=True)
    kept: List[Ems] = []
    for candidate in unique:
        if not any(contains(other, candidate) for other in kept):
            kept.append(candidate)
    return kept


def update_ems_list(spaces: Iterable[Ems], placement: Placement) -> List[Ems]:
    """Apply the difference process for one placement.

    Args:
        spaces: Current spaces of the placement's container
        placement: The box just placed

    Returns:
        Maximal spaces after the placement, sorted by priority
    """
    split: List[Ems] = []
    for space in spaces:
        split.extend(subtract_box(space, placement))
    return sorted(prune_contained(split), key=ems_priority_key)
