"""
Schreier Indices Package
Schreier graphs of tree automata with exact closed-form indices and brute-force oracles.
"""

__version__ = "1.0.0"
