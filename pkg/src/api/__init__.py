"""
HTTP-сервис: меры зависимости и сохранённые прогоны
"""

from .api_response import APIError, APIResponse
from .app import app, create_app

__all__ = [
    'APIError',
    'APIResponse',
    'app',
    'create_app',
]
