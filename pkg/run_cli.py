#!/usr/bin/env python3
"""
Schottky uniformization toolkit
Run with: python run_cli.py <schottky|annulus|dessin|verify> [options]
"""

import sys
from pathlib import Path

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
