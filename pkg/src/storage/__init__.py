"""
Хранилище результатов прогонов
"""

import logging

from ..settings import get_settings
from .file_repository import FileResultRepository
from .models import RESULT_SCHEMA_VERSION, ResultRecord, canonical_json, make_run_id
from .repository import InMemoryResultRepository, ResultRepository

logger = logging.getLogger(__name__)


def repository_from_settings() -> ResultRepository:
    settings = get_settings()
    if settings.results_backend == "memory":
        logger.info("Results backend: memory")
        return InMemoryResultRepository()
    logger.info("Results backend: file (%s)", settings.out_dir)
    return FileResultRepository(settings.out_dir)


__all__ = [
    'FileResultRepository',
    'InMemoryResultRepository',
    'RESULT_SCHEMA_VERSION',
    'ResultRecord',
    'ResultRepository',
    'canonical_json',
    'make_run_id',
    'repository_from_settings',
]
