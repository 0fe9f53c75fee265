"""Exact and certified verification of subgroup-index bounds for finite groups."""

__version__ = "0.1.0"
