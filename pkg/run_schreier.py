"""
Schreier Graph Indices - Command Line Runner

Generates Schreier graphs of tree automata, evaluates the closed-form indices
and cross-checks them against brute force.

Examples:
  python run_schreier.py graph --tree data/corpus/p2.txt -n 3 --format json
  python run_schreier.py indices --tree data/corpus/p3.txt -n 2
  python run_schreier.py verify
"""

import sys

from src.cli import run


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
