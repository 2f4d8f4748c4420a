"""Background task tracking for solve runs submitted over HTTP."""

import logging
import threading
import uuid
from datetime import datetime, timedelta, timezone
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

logger = logging.getLogger(__name__)


def _now() -> datetime:
    return datetime.now(timezone.utc)


class TaskStatus(str, Enum):
    """Status of a background task."""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class Task(BaseModel):
    """Background task representation."""
    task_id: str
    task_type: str
    label: Optional[str] = None  # instance name for solve tasks
    status: TaskStatus
    result: Optional[Any] = None
    error: Optional[str] = None
    created_at: datetime
    started_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    # Progress tracking
    progress_percent: Optional[int] = None  # 0-100
    progress_message: Optional[str] = None  # e.g. "Generation 12/100"
    progress_detail: Optional[str] = None  # e.g. best fitness so far

    @property
    def duration_seconds(self) -> Optional[float]:
        """Get task duration in seconds."""
        if self.started_at and self.completed_at:
            return (self.completed_at - self.started_at).total_seconds()
        elif self.started_at:
            return (_now() - self.started_at).total_seconds()
        return None


class TaskManager:
    """Process-wide registry of background tasks.

    Progress updates arrive from the solver thread while requests read task
    state, so every mutation goes through a lock.
    """

    def __init__(self):
        self._tasks: Dict[str, Task] = {}
        self._lock = threading.Lock()

    def create_task(self, task_type: str, label: Optional[str] = None) -> str:
        """Create a new pending task.

        Args:
            task_type: Type/name of the task
            label: Human-readable subject of the task

        Returns:
            Unique task ID
        """
        task_id = uuid.uuid4().hex[:8]
        with self._lock:
            self._tasks[task_id] = Task(
                task_id=task_id,
                task_type=task_type,
                label=label,
                status=TaskStatus.PENDING,
                created_at=_now(),
            )
        logger.debug("Created %s task %s (%s)", task_type, task_id, label)
        return task_id

    def start_task(self, task_id: str) -> None:
        with self._lock:
            task = self._tasks.get(task_id)
            if task:
                task.status = TaskStatus.RUNNING
                task.started_at = _now()
                task.progress_percent = 0
                task.progress_message = "Starting..."

    def update_progress(
        self,
        task_id: str,
        percent: Optional[int] = None,
        message: Optional[str] = None,
        detail: Optional[str] = None,
    ) -> None:
        """Update task progress.

        Args:
            task_id: Task ID to update
            percent: Progress percentage (clamped to 0-100)
            message: Current step description
            detail: Additional detail
        """
        with self._lock:
            task = self._tasks.get(task_id)
            if not task:
                return
            if percent is not None:
                task.progress_percent = min(100, max(0, percent))
            if message is not None:
                task.progress_message = message
            if detail is not None:
                task.progress_detail = detail

    def complete_task(self, task_id: str, result: Any) -> None:
        with self._lock:
            task = self._tasks.get(task_id)
            if task:
                task.status = TaskStatus.COMPLETED
                task.result = result
                task.completed_at = _now()
                task.progress_percent = 100
                task.progress_message = "Completed"

    def fail_task(self, task_id: str, error: str) -> None:
        with self._lock:
            task = self._tasks.get(task_id)
            if task:
                task.status = TaskStatus.FAILED
                task.error = error
                task.completed_at = _now()

    def get_task(self, task_id: str) -> Optional[Task]:
        with self._lock:
            task = self._tasks.get(task_id)
            return task.model_copy() if task else None

    def list_tasks(
        self,
        status: Optional[TaskStatus] = None,
        task_type: Optional[str] = None,
    ) -> List[Task]:
        """List tasks, newest first, with optional filters."""
        with self._lock:
            tasks = [t.model_copy() for t in self._tasks.values()]

        if status:
            tasks = [t for t in tasks if t.status == status]
        if task_type:
            tasks = [t for t in tasks if t.task_type == task_type]

        return sorted(tasks, key=lambda t: t.created_at, reverse=True)

    def cleanup_old_tasks(self, max_age_hours: int = 24) -> int:
        """Remove finished tasks older than max_age_hours.

        Returns:
            Number of tasks removed
        """
        cutoff = _now() - timedelta(hours=max_age_hours)
        with self._lock:
            before = len(self._tasks)
            self._tasks = {
                k: v
                for k, v in self._tasks.items()
                if v.created_at > cutoff or v.status in (TaskStatus.PENDING, TaskStatus.RUNNING)
            }
            return before - len(self._tasks)

    def running_count(self, task_type: str) -> int:
        with self._lock:
            return sum(
                1 for t in self._tasks.values()
                if t.task_type == task_type and t.status == TaskStatus.RUNNING
            )


# Global task manager instance
task_manager = TaskManager()
