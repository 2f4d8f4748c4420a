from .chromosome import Chromosome, ChromosomeFormatError, parse_chromosome, serialize_chromosome
from .genetic import ELITE_MARKER, GaConfig, Individual, MatingPair
from .instance import BoxSpec, ContainerSpec, Instance, InstanceFormatError, parse_instance, serialize_instance
from .packing import Ems, Orientation, PackingSolution, Placement, SolutionFormatError
from .run_state import CheckpointRecord, GenerationStats, RunResult, RunState
from .tools import CutGenSpec, OracleResult, ValidationReport, Violation, ViolationKind

__all__ = [
    "BoxSpec",
    "CheckpointRecord",
    "Chromosome",
    "ChromosomeFormatError",
    "ContainerSpec",
    "CutGenSpec",
    "ELITE_MARKER",
    "Ems",
    "GaConfig",
    "GenerationStats",
    "Individual",
    "Instance",
    "InstanceFormatError",
    "MatingPair",
    "OracleResult",
    "Orientation",
    "PackingSolution",
    "Placement",
    "RunResult",
    "RunState",
    "SolutionFormatError",
    "ValidationReport",
    "Violation",
    "ViolationKind",
    "parse_chromosome",
    "parse_instance",
    "serialize_chromosome",
    "serialize_instance",
]
