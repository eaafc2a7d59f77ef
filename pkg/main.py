#!/usr/bin/env python3
"""
Forest counting entry point

Usage:
    python main.py count --n 5
    python main.py verify --max-n 6
"""

import sys

from forestcount.cli import ForestCLI

if __name__ == "__main__":
    sys.exit(ForestCLI(prog='main.py').run())
