"""FastAPI dependency injection for services."""

from pathlib import Path
from typing import Optional

from fastapi import HTTPException

from app.config import Settings, get_settings
from app.models.instance import Instance, parse_instance
from app.services.engine import GeneticEngine
from app.tasks.background import TaskManager, task_manager


def get_task_manager() -> TaskManager:
    """Get the global task manager instance."""
    return task_manager


def parse_instance_or_400(text: str, name: str = "instance") -> Instance:
    """Parse request instance text, turning format errors into HTTP 400."""
    try:
        return parse_instance(text, name=name)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=f"Invalid instance: {e}")


def get_engine(
    instance: Instance,
    overrides: dict,
    task_id: str,
    write_checkpoints: bool,
    settings: Optional[Settings] = None,
) -> GeneticEngine:
    """Build a GeneticEngine for one solve task.

    Args:
        instance: Parsed instance
        overrides: GaConfig field overrides from the request
        task_id: Names the task's checkpoint subdirectory
        write_checkpoints: Write gen_<index>.pop files for this task
        settings: Optional settings (uses default if not provided)

    Returns:
        GeneticEngine ready to run

    Raises:
        HTTPException: 400 if the overrides do not form a valid GaConfig
    """
    if settings is None:
        settings = get_settings()
    try:
        config = settings.default_ga_config(**overrides)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=f"Invalid run config: {e}")
    checkpoint_dir = Path(settings.checkpoint_dir) / task_id if write_checkpoints else None
    return GeneticEngine(instance, config, checkpoint_dir=checkpoint_dir, write_checkpoints=write_checkpoints)
