#!/usr/bin/env python3
"""
procmine CLI launcher.

Runs the command-line interface from a source checkout without installing
the package.

Usage:
    python cli.py discover --algorithm alpha --input log.xes --dot-out net.dot
    python cli.py conform --method alignment --input log.xes --model net.json
"""

import sys
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
