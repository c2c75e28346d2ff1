"""Exact computational companion for big-monodromy finiteness arguments over p-adic period maps."""

__version__ = "0.1.0"
