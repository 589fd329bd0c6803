"""
Командная строка admin-lab
"""

from .config import CliConfig, build_cli_config, load_config_file, parse_overrides
from .main import build_parser, exit_code_for, main

__all__ = [
    'CliConfig',
    'build_cli_config',
    'build_parser',
    'exit_code_for',
    'load_config_file',
    'main',
    'parse_overrides',
]
