from .engine import GeneticEngine
from .packer import BestMatchPacker, decode

__all__ = ["BestMatchPacker", "GeneticEngine", "decode"]
