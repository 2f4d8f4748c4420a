from .background import TaskManager, TaskStatus, Task

__all__ = ["TaskManager", "TaskStatus", "Task"]
