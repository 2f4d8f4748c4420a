"""Tests for empty maximal space geometry, checked against a voxel grid."""

import numpy as np
import pytest

from app.models.instance import ContainerSpec
from app.models.packing import Ems, Placement
from app.services.ems import (
    contains,
    ems_priority_key,
    ems_priority_less,
    initial_ems,
    prune_contained,
    subtract_box,
    update_ems_list,
)
from app.services.packer import BestMatchPacker
from factories import random_chromosome, random_instance
from voxel_oracle import maximal_empty_cuboids, occupancy, union_grid


def _cuboids(spaces):
    return {(s.min, s.max) for s in spaces}


class TestInitialEms:

    @pytest.mark.parametrize("dims", [(10, 10, 10), (3, 7, 2)])
    def test_covers_container(self, dims) -> None:
        container = ContainerSpec(id=1, length=dims[0], width=dims[1], height=dims[2])
        space = initial_ems(container)
        assert space == Ems(1, (0, 0, 0), dims)
        assert space.volume == container.volume


class TestSubtractBox:

    def test_corner_box_leaves_three_spaces(self) -> None:
        space = Ems(1, (0, 0, 0), (10, 10, 10))
        slabs = subtract_box(space, Placement(1, 1, (0, 0, 0), (4, 5, 6)))
        assert _cuboids(slabs) == {
            ((4, 0, 0), (10, 10, 10)),
            ((0, 5, 0), (10, 10, 10)),
            ((0, 0, 6), (10, 10, 10)),
        }

    def test_exact_fill_leaves_nothing(self) -> None:
        space = Ems(1, (0, 0, 0), (4, 5, 6))
        assert subtract_box(space, Placement(1, 1, (0, 0, 0), (4, 5, 6))) == []

    def test_interior_box_leaves_six_slabs(self) -> None:
        space = Ems(1, (0, 0, 0), (10, 10, 10))
        slabs = subtract_box(space, Placement(1, 1, (4, 4, 4), (2, 2, 2)))
        assert len(slabs) == 6
        free = union_grid((10, 10, 10), _cuboids(slabs))
        assert int(free.sum()) == 1000 - 8

    def test_touching_box_does_not_cut(self) -> None:
        space = Ems(1, (5, 0, 0), (10, 10, 10))
        assert subtract_box(space, Placement(1, 1, (0, 0, 0), (5, 10, 10))) == [space]


class TestPriority:

    def test_smallest_coordinate_first(self) -> None:
        a = Ems(1, (0, 0, 0), (5, 5, 5))
        b = Ems(1, (1, 2, 3), (5, 5, 5))
        assert ems_priority_less(a, b)
        assert not ems_priority_less(b, a)

    def test_second_smallest_breaks_tie(self) -> None:
        a = Ems(1, (1, 0, 4), (9, 9, 9))
        b = Ems(1, (0, 3, 2), (9, 9, 9))
        assert ems_priority_less(a, b)

    def test_symmetric_vertices_still_totally_ordered(self) -> None:
        a = Ems(1, (0, 2, 5), (9, 9, 9))
        b = Ems(1, (2, 0, 5), (9, 9, 9))
        assert ems_priority_less(a, b) != ems_priority_less(b, a)

    def test_identical_spaces_are_not_less(self) -> None:
        a = Ems(2, (1, 1, 1), (3, 3, 3))
        assert not ems_priority_less(a, a)


class TestUpdateEmsList:

    def test_first_placement_in_empty_container(self) -> None:
        spaces = [Ems(1, (0, 0, 0), (10, 10, 10))]
        updated = update_ems_list(spaces, Placement(1, 1, (0, 0, 0), (4, 5, 6)))
        assert [(s.min, s.max) for s in updated] == [
            ((4, 0, 0), (10, 10, 10)),
            ((0, 5, 0), (10, 10, 10)),
            ((0, 0, 6), (10, 10, 10)),
        ]

    def test_disjoint_box_only_resorts(self) -> None:
        spaces = [Ems(1, (5, 0, 0), (10, 10, 10)), Ems(1, (0, 0, 5), (10, 10, 10))]
        updated = update_ems_list(spaces, Placement(1, 1, (0, 0, 0), (5, 5, 5)))
        assert updated == sorted(spaces, key=ems_priority_key)

    def test_two_placements_match_voxel_oracle(self) -> None:
        dims = (10, 10, 10)
        placements = [((0, 0, 0), (4, 5, 6)), ((4, 0, 0), (3, 3, 3))]
        spaces = [Ems(1, (0, 0, 0), dims)]
        for position, size in placements:
            spaces = update_ems_list(spaces, Placement(1, 1, position, size))
        grid = occupancy(dims, placements)
        assert _cuboids(spaces) == maximal_empty_cuboids(grid)
        np.testing.assert_array_equal(union_grid(dims, _cuboids(spaces)), ~grid)

    def test_prune_contained_drops_duplicates_and_subsets(self) -> None:
        big = Ems(1, (0, 0, 0), (5, 5, 5))
        inner = Ems(1, (1, 1, 1), (5, 5, 5))
        other = Ems(2, (1, 1, 1), (5, 5, 5))
        kept = prune_contained([inner, big, big, other])
        assert set(kept) == {big, other}
        assert contains(big, inner)
        assert not contains(big, other)


def _check_decode_spaces(instance, chromosome, kb=3, ke=5) -> int:
    """Compare every EMS list the decoder emits with brute-force maximal cuboids."""
    containers = instance.container_index()
    packer = BestMatchPacker(instance, chromosome, kb, ke)
    placed = {}
    steps = 0
    for step in packer.steps():
        p = step.placement
        placed.setdefault(p.container_id, []).append((p.position, p.dims))
        spaces = step.spaces[p.container_id]
        assert list(spaces) == sorted(spaces, key=ems_priority_key)
        grid = occupancy(containers[p.container_id].dims, placed[p.container_id])
        assert _cuboids(spaces) == maximal_empty_cuboids(grid)
        steps += 1
    return steps


class TestEmsAgainstVoxels:
    """After every placement the EMS list is exactly the set of maximal empty cuboids."""

    def test_small_random_instances(self) -> None:
        rng = np.random.default_rng(2024)
        total = 0
        for _ in range(40):
            inst = random_instance(rng, max_boxes=6, max_containers=2, max_dim=6)
            total += _check_decode_spaces(inst, random_chromosome(inst, rng))
        assert total > 0

    @pytest.mark.slow
    def test_random_instances_up_to_twelve(self) -> None:
        rng = np.random.default_rng(99)
        for _ in range(200):
            inst = random_instance(rng, max_boxes=8, max_containers=3, max_dim=12)
            _check_decode_spaces(inst, random_chromosome(inst, rng))
