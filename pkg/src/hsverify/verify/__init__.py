"""Bound calculus and the per-family certificate pipelines."""
