"""Pfaffian graphs, even orientations and bad-graph certificates."""

__version__ = "0.1.0"
