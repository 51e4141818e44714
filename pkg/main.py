#!/usr/bin/env python3
"""
Main entry point for crossfam
Forwards to the click CLI so the tool runs without installing the package
"""

import os
import sys

ROOT = os.path.abspath(os.path.dirname(__file__))
SRC_DIR = os.path.join(ROOT, "src")
if SRC_DIR not in sys.path:
    sys.path.insert(0, SRC_DIR)

from crossfam.cli import cli


if __name__ == "__main__":
    cli()
