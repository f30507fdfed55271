"""Spanning containers in tournaments: construction, verification and exact oracles."""

__version__ = "0.1.0"
