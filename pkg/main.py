#!/usr/bin/env python3
"""
Главный файл для запуска admin-lab (см. python main.py --help)
"""

import sys

from src.cli import main

if __name__ == '__main__':
    sys.exit(main())
