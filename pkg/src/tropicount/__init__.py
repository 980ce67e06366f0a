"""Exact counts of rational plane tropical curves."""
__version__ = "0.1.0"
