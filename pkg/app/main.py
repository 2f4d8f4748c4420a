"""FastAPI application entry point."""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.api.routes import SERVICE_VERSION, router
from app.config import get_settings
from app.logging_setup import setup_logging
from app.tasks.background import task_manager

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager."""
    settings = get_settings()
    log_file_path = setup_logging(settings)
    logger.info("Starting bin packing service...")
    logger.info("  Checkpoint dir: %s", settings.checkpoint_dir)
    logger.info("  Default workers: %d", settings.workers)
    logger.info("  Log file: %s", log_file_path)

    yield

    removed = task_manager.cleanup_old_tasks()
    logger.info("Shutting down bin packing service (%d old tasks dropped)", removed)


app = FastAPI(
    title="Bin Packing GA",
    description="""
    Multiple-container 3D bin packing with a best-match EMS decoder and a
    genetic algorithm over (box order, container order) chromosomes.

    ## Quick Start

    1. **Decode**: `POST /decode` with an instance and a chromosome
    2. **Solve**: `POST /solve` with an instance, then poll `GET /tasks/{task_id}`
    3. **Validate**: `POST /validate` with an instance and a solution record
    """,
    version=SERVICE_VERSION,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(router, prefix="/api/v1", tags=["api"])
app.include_router(router, tags=["api"])


@app.get("/")
async def root():
    """Root endpoint with API info."""
    return {
        "service": "binpack-ga",
        "version": SERVICE_VERSION,
        "docs": "/docs",
        "health": "/health",
    }
