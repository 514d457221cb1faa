"""Exact computations in the level-two Zhu algebra of the rank-one Heisenberg VOA."""

__version__ = "0.1.0"
