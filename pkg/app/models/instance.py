"""Instance models: the boxes to pack and the heterogeneous containers available."""

import re
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

Dims = Tuple[int, int, int]

# Box and container volume totals must fit a signed 64-bit integer
MAX_TOTAL_VOLUME = 2**63 - 1

_INTEGER = re.compile(r"-?[0-9]+")


class InstanceFormatError(ValueError):
    """Raised when instance text cannot be parsed or validated."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


def volume_overflow(box_volumes: Iterable[int], container_volumes: Iterable[int]) -> Optional[str]:
    """Describe which volume total exceeds MAX_TOTAL_VOLUME, or None if both fit."""
    for kind, total in (("box", sum(box_volumes)), ("container", sum(container_volumes))):
        if total > MAX_TOTAL_VOLUME:
            return f"total {kind} volume {total} exceeds 64-bit limit {MAX_TOTAL_VOLUME}"
    return None


class BoxSpec(BaseModel):
    """A box to be packed, with its original (unrotated) dimensions."""

    model_config = {"frozen": True}

    id: int = Field(..., ge=1)
    length: int = Field(..., ge=1)
    width: int = Field(..., ge=1)
    height: int = Field(..., ge=1)

    @property
    def dims(self) -> Dims:
        """Dimensions as an (l, w, h) tuple."""
        return (self.length, self.width, self.height)

    @property
    def volume(self) -> int:
        return self.length * self.width * self.height


class ContainerSpec(BaseModel):
    """A container (bin) that boxes can be loaded into."""

    model_config = {"frozen": True}

    id: int = Field(..., ge=1)
    length: int = Field(..., ge=1)
    width: int = Field(..., ge=1)
    height: int = Field(..., ge=1)

    @property
    def dims(self) -> Dims:
        """Dimensions as an (L, W, H) tuple."""
        return (self.length, self.width, self.height)

    @property
    def volume(self) -> int:
        return self.length * self.width * self.height


class Instance(BaseModel):
    """A bin packing instance: M boxes and N containers.

    Boxes and containers keep the order they were given in; ids must cover
    1..M and 1..N exactly.
    """

    model_config = {"frozen": True}

    boxes: Tuple[BoxSpec, ...]
    containers: Tuple[ContainerSpec, ...]
    name: str = "instance"

    @model_validator(mode="after")
    def check_dense_ids(self) -> "Instance":
        """Ensure ids are exactly 1..M and 1..N and volume totals fit 64 bits."""
        if not self.boxes:
            raise ValueError("instance needs at least one box")
        if not self.containers:
            raise ValueError("instance needs at least one container")
        if sorted(b.id for b in self.boxes) != list(range(1, len(self.boxes) + 1)):
            raise ValueError("box ids must be exactly 1..M")
        if sorted(c.id for c in self.containers) != list(range(1, len(self.containers) + 1)):
            raise ValueError("container ids must be exactly 1..N")
        overflow = volume_overflow((b.volume for b in self.boxes), (c.volume for c in self.containers))
        if overflow:
            raise ValueError(overflow)
        return self

    @property
    def box_count(self) -> int:
        return len(self.boxes)

    @property
    def container_count(self) -> int:
        return len(self.containers)

    def box_index(self) -> Dict[int, BoxSpec]:
        """Map box id to its spec."""
        return {b.id: b for b in self.boxes}

    def container_index(self) -> Dict[int, ContainerSpec]:
        """Map container id to its spec."""
        return {c.id: c for c in self.containers}

    @property
    def total_box_volume(self) -> int:
        return sum(b.volume for b in self.boxes)


def _parse_ints(line: str, expected: int, line_number: int) -> List[int]:
    parts = line.split()
    if len(parts) != expected:
        raise InstanceFormatError(
            f"expected {expected} integers, got {len(parts)}", line_number
        )
    if not all(_INTEGER.fullmatch(p) for p in parts):
        raise InstanceFormatError(f"non-integer value in {line!r}", line_number)
    return [int(p) for p in parts]


def parse_instance(text: str, name: str = "instance") -> Instance:
    """Parse instance-file text.

    Format: line 1 ``M N``; then M lines ``id l w h``; then N lines
    ``id L W H``. Blank lines and ``#`` comment lines are ignored.

    Args:
        text: Instance file content
        name: Label carried on the instance (usually the file stem)

    Returns:
        Validated Instance

    Raises:
        InstanceFormatError: On malformed lines, non-positive dimensions, or
            duplicate/missing ids, with the offending line number; on volume
            totals beyond 64 bits, at the header line
    """
    lines = [
        (number, raw.strip())
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise InstanceFormatError("empty instance file", 1)

    header_line, header = lines[0]
    box_count, container_count = _parse_ints(header, 2, header_line)
    if box_count < 1 or container_count < 1:
        raise InstanceFormatError("M and N must be positive", header_line)

    body = lines[1:]
    if len(body) < box_count + container_count:
        last_line = lines[-1][0]
        raise InstanceFormatError(
            f"expected {box_count + container_count} item lines, found {len(body)}",
            last_line + 1,
        )
    if len(body) > box_count + container_count:
        raise InstanceFormatError("unexpected extra line", body[box_count + container_count][0])

    def read_section(section, count, kind):
        items = []
        seen: Dict[int, int] = {}
        for line_number, line in section:
            item_id, a, b, c = _parse_ints(line, 4, line_number)
            if min(a, b, c) < 1:
                raise InstanceFormatError(f"non-positive dimension for {kind} {item_id}", line_number)
            if not 1 <= item_id <= count:
                raise InstanceFormatError(f"{kind} id {item_id} outside 1..{count}", line_number)
            if item_id in seen:
                raise InstanceFormatError(
                    f"duplicate {kind} id {item_id} (first on line {seen[item_id]})", line_number
                )
            seen[item_id] = line_number
            items.append((item_id, a, b, c))
        return items

    # Dense range plus no duplicates means no id can be missing.
    box_rows = read_section(body[:box_count], box_count, "box")
    container_rows = read_section(body[box_count:], container_count, "container")
    overflow = volume_overflow(
        (l * w * h for _, l, w, h in box_rows), (l * w * h for _, l, w, h in container_rows)
    )
    if overflow:
        raise InstanceFormatError(overflow, header_line)

    return Instance(
        boxes=tuple(BoxSpec(id=i, length=l, width=w, height=h) for i, l, w, h in box_rows),
        containers=tuple(
            ContainerSpec(id=i, length=l, width=w, height=h) for i, l, w, h in container_rows
        ),
        name=name,
    )


def serialize_instance(instance: Instance) -> str:
    """Render an instance in canonical file form (no comments, single spaces)."""
    lines = [f"{instance.box_count} {instance.container_count}"]
    lines.extend(f"{b.id} {b.length} {b.width} {b.height}" for b in instance.boxes)
    lines.extend(f"{c.id} {c.length} {c.width} {c.height}" for c in instance.containers)
    return "\n".join(lines) + "\n"
