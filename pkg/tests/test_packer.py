"""Tests for the best-match decoder."""

import itertools

import numpy as np
import pytest

from app.models.chromosome import Chromosome
from app.models.instance import BoxSpec
from app.models.packing import (
    Ems,
    Orientation,
    PackingSolution,
    Placement,
    format_fitness,
    format_solution,
    parse_solution,
)
from app.models.tools import ViolationKind
from app.services.packer import (
    BestMatchPacker,
    container_utilization,
    decode,
    fits,
    fitness,
    orientations,
    placement_margin_key,
)
from app.services.validator import validate_solution
from factories import make_instance, random_chromosome, random_instance
from voxel_oracle import voxel_decode

# =============================================================================
# Orientation and fit primitives
# =============================================================================


class TestOrientations:

    def test_distinct_box(self) -> None:
        result = orientations(BoxSpec(id=1, length=1, width=2, height=3))
        assert len(result) == 6
        assert len({o.dims for o in result}) == 6
        assert [o.index for o in result] == list(range(6))
        assert result[0].dims == (1, 2, 3)

    def test_cube_keeps_duplicates(self) -> None:
        result = orientations(BoxSpec(id=1, length=2, width=2, height=2))
        assert [o.dims for o in result] == [(2, 2, 2)] * 6

    def test_every_orientation_is_a_permutation(self, rng: np.random.Generator) -> None:
        for _ in range(1000):
            l, w, h = (int(v) for v in rng.integers(1, 50, size=3))
            for o in orientations(BoxSpec(id=1, length=l, width=w, height=h)):
                assert sorted(o.dims) == sorted((l, w, h))


class TestFits:
    space = Ems(1, (0, 0, 0), (6, 5, 4))

    def test_exact_fit(self) -> None:
        assert fits(self.space, Orientation(0, (6, 5, 4)))

    def test_too_long(self) -> None:
        assert not fits(self.space, Orientation(0, (7, 1, 1)))

    def test_componentwise(self) -> None:
        assert not fits(self.space, Orientation(0, (4, 5, 6)))
        assert fits(self.space, Orientation(5, (6, 5, 4)))

    def test_offset_space_uses_extent(self) -> None:
        assert fits(Ems(1, (2, 2, 2), (8, 7, 6)), Orientation(0, (6, 5, 4)))


class TestPlacementMarginKey:

    def test_zero_margins(self) -> None:
        assert placement_margin_key(Ems(1, (0, 0, 0), (6, 5, 4)), Orientation(0, (6, 5, 4))) == (0, 0, 0)

    def test_sorted_margins(self) -> None:
        assert placement_margin_key(Ems(1, (0, 0, 0), (10, 10, 10)), Orientation(0, (4, 5, 6))) == (4, 5, 6)

    def test_best_orientation_by_enumeration(self) -> None:
        space = Ems(1, (0, 0, 0), (10, 8, 6))
        keys = [
            placement_margin_key(space, o)
            for o in orientations(BoxSpec(id=1, length=4, width=5, height=6))
            if fits(space, o)
        ]
        assert len(keys) == 6
        assert min(keys) == (0, 3, 6)


# =============================================================================
# Decoding
# =============================================================================


class TestDecode:

    def test_exact_fit(self, exact_fit) -> None:
        sol = decode(Chromosome(bps=(1,), cls=(1,)), exact_fit)
        assert sol.feasible
        assert sol.fitness == 1.0
        assert sol.placements == [Placement(1, 1, (0, 0, 0), (5, 5, 5))]
        assert sol.opened_containers == [1]

    def test_box_larger_than_every_container(self) -> None:
        inst = make_instance([(6, 1, 1)], [(5, 5, 5)])
        sol = decode(Chromosome(bps=(1,), cls=(1,)), inst)
        assert not sol.feasible
        assert sol.fitness == 0.0
        assert sol.placements == []

    def test_mixed_instance_hand_trace(self, mixed_instance) -> None:
        sol = decode(Chromosome(bps=(1, 2, 3), cls=(1, 2)), mixed_instance)
        assert sol.feasible
        assert sol.opened_containers == [1]
        assert sol.placements == [
            Placement(3, 1, (0, 0, 0), (8, 4, 4)),
            Placement(1, 1, (0, 4, 0), (4, 4, 4)),
            Placement(2, 1, (4, 4, 0), (4, 4, 4)),
        ]
        assert sol.fitness == 1.0

    def test_mixed_instance_matches_voxel_decoder(self, mixed_instance) -> None:
        for bps in itertools.permutations((1, 2, 3)):
            for cls in itertools.permutations((1, 2)):
                chromosome = Chromosome(bps=bps, cls=cls)
                sol = decode(chromosome, mixed_instance)
                placements, opened, feasible = voxel_decode(mixed_instance, chromosome, 3, 5)
                assert sol.feasible == feasible
                assert sol.opened_containers == opened
                assert [tuple(p) for p in sol.placements] == placements

    @pytest.mark.parametrize("kb, ke", [(1, 1), (2, 1), (3, 5), (5, 2)])
    def test_random_instances_match_voxel_decoder(self, kb: int, ke: int) -> None:
        rng = np.random.default_rng(kb * 10 + ke)
        for _ in range(25):
            inst = random_instance(rng, max_boxes=6, max_containers=3, max_dim=6)
            chromosome = random_chromosome(inst, rng)
            sol = decode(chromosome, inst, kb, ke)
            placements, opened, feasible = voxel_decode(inst, chromosome, kb, ke)
            assert sol.feasible == feasible
            assert sol.opened_containers == opened
            assert [tuple(p) for p in sol.placements] == placements

    def test_kb_one_follows_bps_order(self, mixed_instance) -> None:
        sol = decode(Chromosome(bps=(1, 2, 3), cls=(1, 2)), mixed_instance, kb=1, ke=5)
        assert [p.box_id for p in sol.placements] == [1, 2, 3]

    def test_invalid_parameters(self, exact_fit) -> None:
        with pytest.raises(ValueError, match="kb and ke"):
            decode(Chromosome(bps=(1,), cls=(1,)), exact_fit, kb=0)

    def test_chromosome_must_match_instance(self, exact_fit) -> None:
        with pytest.raises(ValueError, match="do not match"):
            decode(Chromosome(bps=(1, 2), cls=(1,)), exact_fit)

    def test_deterministic(self, small_instance) -> None:
        chromosome = Chromosome(bps=(6, 5, 4, 3, 2, 1), cls=(3, 1, 2))
        assert format_solution(decode(chromosome, small_instance)) == format_solution(
            decode(chromosome, small_instance)
        )


class TestSteps:

    def test_snapshot_per_placement(self, mixed_instance) -> None:
        packer = BestMatchPacker(mixed_instance, Chromosome(bps=(1, 2, 3), cls=(1, 2)))
        steps = list(packer.steps())
        assert [s.step for s in steps] == [1, 2, 3]
        assert steps[0].spaces[1] == (Ems(1, (0, 4, 0), (8, 8, 4)),)
        assert steps[-1].spaces[1] == ()
        assert packer.feasible is True

    def test_solution_before_finish(self, mixed_instance) -> None:
        packer = BestMatchPacker(mixed_instance, Chromosome(bps=(1, 2, 3), cls=(1, 2)))
        with pytest.raises(RuntimeError):
            packer.solution()


class TestFitness:

    def test_fill_ratio(self) -> None:
        inst = make_instance([(10, 10, 6)], [(10, 10, 10)])
        sol = decode(Chromosome(bps=(1,), cls=(1,)), inst)
        assert sol.fitness == 0.6

    def test_infeasible_scores_zero(self) -> None:
        inst = make_instance([(1, 1, 1)], [(2, 2, 2)])
        sol = PackingSolution(placements=[], opened_containers=[1], feasible=False, fitness=0.0)
        assert fitness(sol, inst) == 0.0

    def test_opened_containers_count_toward_capacity(self) -> None:
        inst = make_instance([(4, 4, 4)], [(2, 2, 2), (4, 4, 4)])
        sol = decode(Chromosome(bps=(1,), cls=(1, 2)), inst)
        assert sol.feasible
        assert sol.opened_containers == [1, 2]
        assert [p.container_id for p in sol.placements] == [2]
        assert sol.fitness == 64 / 72

    def test_container_utilization(self, mixed_instance) -> None:
        sol = decode(Chromosome(bps=(1, 2, 3), cls=(1, 2)), mixed_instance)
        assert container_utilization(sol, mixed_instance) == [(1, 256, 256)]

    def test_utilization_rejects_unknown_container(self, mixed_instance) -> None:
        sol = PackingSolution(
            placements=[Placement(1, 7, (0, 0, 0), (4, 4, 4))],
            opened_containers=[7],
            feasible=False,
            fitness=0.0,
        )
        with pytest.raises(ValueError, match=r"not in the instance: \[7\]"):
            container_utilization(sol, mixed_instance)


class TestGeometricSoundness:
    """Decoder output never violates bounds, overlap, rotation or coverage."""

    @staticmethod
    def _check(rng: np.random.Generator, cases: int, max_boxes: int) -> None:
        for _ in range(cases):
            inst = random_instance(rng, max_boxes=max_boxes, max_containers=5, max_dim=50)
            sol = decode(random_chromosome(inst, rng), inst)
            report = validate_solution(inst, sol)
            if sol.feasible:
                assert report.ok, report.violations
            else:
                assert [v.kind for v in report.violations] == [ViolationKind.INFEASIBLE]

    def test_random_cases(self) -> None:
        self._check(np.random.default_rng(1), cases=200, max_boxes=10)

    @pytest.mark.slow
    def test_thousand_cases(self) -> None:
        self._check(np.random.default_rng(2), cases=1000, max_boxes=20)


class TestSolutionRecord:

    def test_text_layout(self, mixed_instance) -> None:
        sol = decode(Chromosome(bps=(1, 2, 3), cls=(1, 2)), mixed_instance)
        assert format_solution(sol) == (
            "fitness 1\n"
            "feasible true\n"
            "opened 1\n"
            "place 3 1 0 0 0 8 4 4\n"
            "place 1 1 0 4 0 4 4 4\n"
            "place 2 1 4 4 0 4 4 4\n"
        )
        assert parse_solution(format_solution(sol)) == sol

    def test_infeasible_record(self) -> None:
        inst = make_instance([(6, 1, 1)], [(5, 5, 5)])
        text = format_solution(decode(Chromosome(bps=(1,), cls=(1,)), inst))
        assert text == "fitness 0\nfeasible false\nopened 1\n"

    @pytest.mark.parametrize(
        "value, text",
        [(1.0, "1"), (0.0, "0"), (0.25, "0.25"), (1e-6, "0.000001"), (1 / 3, "0.3333333333333333")],
    )
    def test_fitness_text_is_positional(self, value, text) -> None:
        assert format_fitness(value) == text
        assert float(text) == value

    def test_tiny_fitness_round_trips(self) -> None:
        rng = np.random.default_rng(3)
        for value in rng.random(200) * 1e-7:
            text = format_fitness(float(value))
            assert "e" not in text
            assert float(text) == float(value)
