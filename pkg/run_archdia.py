#!/usr/bin/env python3
"""
Entry script for the archdia command-line tool

Usage:
    python run_archdia.py check data/corpus/star.archd
    python run_archdia.py synth data/corpus/master_slave_interval.archd --out json
"""

import os
import sys

# Make the src package importable when run from a checkout
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
