"""
Command-line launcher for fillcheck.
Computes link and filling invariants and prints cited obstruction reports.

Usage: python fillcheck_start.py <command> [options]  (see --help)
"""
import sys
from fillcheck.cli import main


if __name__ == "__main__":
    sys.exit(main())
