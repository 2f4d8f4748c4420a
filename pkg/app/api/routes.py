"""FastAPI routes for the bin packing service."""

import asyncio
import logging
from typing import Any, Dict, List, Optional

from fastapi import APIRouter, BackgroundTasks, Depends, HTTPException, Query
from pydantic import BaseModel, Field

from app.api.dependencies import get_engine, get_task_manager, parse_instance_or_400
from app.config import Settings, get_settings
from app.models.chromosome import parse_chromosome
from app.models.genetic import GaConfig
from app.models.packing import PackingSolution, format_solution, parse_solution
from app.models.tools import ValidationReport
from app.services.packer import decode
from app.services.validator import validate_solution
from app.tasks.background import Task, TaskManager, TaskStatus

logger = logging.getLogger(__name__)

router = APIRouter()

SERVICE_VERSION = "0.1.0"


# Request/Response Models
class DecodeRequest(BaseModel):
    """Decode one chromosome against an instance."""
    instance_text: str = Field(..., min_length=1, description="Instance file contents")
    chromosome: str = Field(..., min_length=1, description='Chromosome text, e.g. "2,1,3|1,2"')
    kb: Optional[int] = Field(default=None, ge=1, description="Boxes considered per step")
    ke: Optional[int] = Field(default=None, ge=1, description="Spaces scanned per opened container")


class DecodeResponse(BaseModel):
    """Decoded packing."""
    fitness: float
    feasible: bool
    opened_containers: List[int]
    placement_count: int
    solution_text: str


class ValidateRequest(BaseModel):
    """Re-check a solution record against an instance."""
    instance_text: str = Field(..., min_length=1)
    solution_text: str = Field(..., min_length=1)


class SolveRequest(BaseModel):
    """Start a genetic algorithm run."""
    instance_text: str = Field(..., min_length=1, description="Instance file contents")
    instance_name: str = Field(default="instance", description="Label used in logs and task listings")
    config: Dict[str, Any] = Field(
        default_factory=dict,
        description="GaConfig overrides (population_size, generations, seed, ...)",
    )
    checkpoints: bool = Field(default=False, description="Write per-generation checkpoints for this task")


class SolveResponse(BaseModel):
    """Response from solve trigger."""
    task_id: str
    status: str
    message: str


class HealthResponse(BaseModel):
    """Response from health check."""
    status: str
    version: str
    running_solves: int


class TaskStatusResponse(BaseModel):
    """Response with task status."""
    task_id: str
    status: TaskStatus
    task_type: str
    label: Optional[str] = None
    result: Optional[dict] = None
    error: Optional[str] = None
    created_at: str
    started_at: Optional[str] = None
    completed_at: Optional[str] = None
    duration_seconds: Optional[float] = None
    progress_percent: Optional[int] = None
    progress_message: Optional[str] = None
    progress_detail: Optional[str] = None

    @classmethod
    def from_task(cls, task: Task) -> "TaskStatusResponse":
        return cls(
            task_id=task.task_id,
            status=task.status,
            task_type=task.task_type,
            label=task.label,
            result=task.result,
            error=task.error,
            created_at=task.created_at.isoformat(),
            started_at=task.started_at.isoformat() if task.started_at else None,
            completed_at=task.completed_at.isoformat() if task.completed_at else None,
            duration_seconds=task.duration_seconds,
            progress_percent=task.progress_percent,
            progress_message=task.progress_message,
            progress_detail=task.progress_detail,
        )


def _decode_response(solution: PackingSolution) -> DecodeResponse:
    return DecodeResponse(
        fitness=solution.fitness,
        feasible=solution.feasible,
        opened_containers=list(solution.opened_containers),
        placement_count=len(solution.placements),
        solution_text=format_solution(solution),
    )


# Routes
@router.get("/health", response_model=HealthResponse)
async def health_check(task_mgr: TaskManager = Depends(get_task_manager)):
    """Service liveness and number of solves in progress."""
    return HealthResponse(
        status="healthy",
        version=SERVICE_VERSION,
        running_solves=task_mgr.running_count("solve"),
    )


@router.post("/decode", response_model=DecodeResponse)
async def decode_chromosome(
    request: DecodeRequest,
    settings: Settings = Depends(get_settings),
):
    """Decode a single chromosome with the best-match placement heuristic."""
    instance = parse_instance_or_400(request.instance_text)
    try:
        chromosome = parse_chromosome(request.chromosome)
        solution = decode(
            chromosome,
            instance,
            request.kb or settings.kb,
            request.ke or settings.ke,
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return _decode_response(solution)


@router.post("/validate", response_model=ValidationReport)
async def validate(request: ValidateRequest):
    """Independently re-check bounds, overlaps, rotations, coverage and fitness."""
    instance = parse_instance_or_400(request.instance_text)
    try:
        solution = parse_solution(request.solution_text)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=f"Invalid solution: {e}")
    return validate_solution(instance, solution)


@router.post("/solve", response_model=SolveResponse)
async def trigger_solve(
    request: SolveRequest,
    background_tasks: BackgroundTasks,
    settings: Settings = Depends(get_settings),
    task_mgr: TaskManager = Depends(get_task_manager),
):
    """Start a genetic algorithm run in the background.

    Returns a task_id for tracking progress via GET /tasks/{task_id}.
    """
    unknown = sorted(set(request.config) - set(GaConfig.model_fields))
    if unknown:
        raise HTTPException(status_code=400, detail=f"Unknown config keys: {', '.join(unknown)}")

    instance = parse_instance_or_400(request.instance_text, name=request.instance_name)
    task_id = task_mgr.create_task("solve", label=request.instance_name)
    try:
        engine = get_engine(instance, request.config, task_id, request.checkpoints, settings)
    except HTTPException as e:
        task_mgr.fail_task(task_id, str(e.detail))
        raise

    def progress_callback(percent: int, message: str, detail: Optional[str] = None):
        task_mgr.update_progress(task_id, percent, message, detail)

    async def run_solve():
        try:
            task_mgr.start_task(task_id)
            logger.info("Starting solve task %s (%s)", task_id, request.instance_name)
            result = await asyncio.to_thread(engine.run, None, progress_callback)
            task_mgr.complete_task(
                task_id,
                {
                    "best_fitness": result.best.fitness,
                    "chromosome": result.best.key,
                    "generations_run": result.generations_run,
                    "stopped_early": result.stopped_early,
                    "elapsed_seconds": result.elapsed_seconds,
                    "solution_text": format_solution(result.solution),
                },
            )
            logger.info("Solve task %s completed (best %.6f)", task_id, result.best.fitness)
        except Exception as e:
            logger.exception("Solve task %s failed", task_id)
            task_mgr.fail_task(task_id, str(e))

    background_tasks.add_task(run_solve)

    return SolveResponse(
        task_id=task_id,
        status="queued",
        message=f"Solve task queued. Check GET /tasks/{task_id} for status.",
    )


@router.get("/tasks/{task_id}", response_model=TaskStatusResponse)
async def get_task_status(
    task_id: str,
    task_mgr: TaskManager = Depends(get_task_manager),
):
    """Get status of a background task."""
    task = task_mgr.get_task(task_id)
    if not task:
        raise HTTPException(status_code=404, detail="Task not found")
    return TaskStatusResponse.from_task(task)


@router.get("/tasks", response_model=List[TaskStatusResponse])
async def list_tasks(
    status: Optional[TaskStatus] = Query(None, description="Filter by status"),
    task_mgr: TaskManager = Depends(get_task_manager),
):
    """List all background tasks."""
    return [TaskStatusResponse.from_task(task) for task in task_mgr.list_tasks(status=status)]
