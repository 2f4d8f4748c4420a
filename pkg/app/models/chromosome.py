"""Chromosome encoding: box packing sequence plus container loading sequence."""

from typing import Sequence, Tuple

from pydantic import BaseModel, field_validator

from app.models.instance import Instance

PART_SEPARATOR = "|"
GENE_SEPARATOR = ","


class ChromosomeFormatError(ValueError):
    """Raised when chromosome text is not a pair of permutations."""


def _check_permutation(genes: Sequence[int], label: str) -> None:
    if sorted(genes) != list(range(1, len(genes) + 1)):
        seen = set()
        for gene in genes:
            if gene in seen:
                raise ValueError(f"duplicate gene {gene} in {label}")
            seen.add(gene)
            if not 1 <= gene <= len(genes):
                raise ValueError(f"gene {gene} out of range 1..{len(genes)} in {label}")
        raise ValueError(f"{label} is not a permutation of 1..{len(genes)}")


class Chromosome(BaseModel):
    """Two permutations: BPS over box ids and CLS over container ids."""

    model_config = {"frozen": True}

    bps: Tuple[int, ...]
    cls: Tuple[int, ...]

    @field_validator("bps", "cls")
    @classmethod
    def validate_permutation(cls, v: Tuple[int, ...], info) -> Tuple[int, ...]:
        """Each part must be a bijection on 1..n."""
        if not v:
            raise ValueError(f"{info.field_name} must not be empty")
        _check_permutation(v, info.field_name)
        return v

    def matches(self, instance: Instance) -> bool:
        """Check the chromosome has the instance's M and N."""
        return len(self.bps) == instance.box_count and len(self.cls) == instance.container_count

    def __str__(self) -> str:
        return serialize_chromosome(self)


def serialize_chromosome(chromosome: Chromosome) -> str:
    """Canonical text ``b1,...,bM|c1,...,cN``; also the checkpoint record key."""
    return (
        GENE_SEPARATOR.join(map(str, chromosome.bps))
        + PART_SEPARATOR
        + GENE_SEPARATOR.join(map(str, chromosome.cls))
    )


def parse_chromosome(text: str) -> Chromosome:
    """Parse canonical chromosome text.

    Raises:
        ChromosomeFormatError: If the text is malformed or either part is
            not a permutation
    """
    parts = text.strip().split(PART_SEPARATOR)
    if len(parts) != 2:
        raise ChromosomeFormatError(f"expected exactly one '{PART_SEPARATOR}' in {text!r}")
    try:
        bps = tuple(int(g) for g in parts[0].split(GENE_SEPARATOR))
        cls_ = tuple(int(g) for g in parts[1].split(GENE_SEPARATOR))
    except ValueError:
        raise ChromosomeFormatError(f"non-integer gene in {text!r}") from None
    try:
        return Chromosome(bps=bps, cls=cls_)
    except ValueError as e:
        raise ChromosomeFormatError(str(e)) from None
