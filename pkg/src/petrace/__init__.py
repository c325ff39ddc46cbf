"""Exact engine for partition Eisenstein traces, crank moments and torsional Jacobi expansions."""

__version__ = "0.1.0"
