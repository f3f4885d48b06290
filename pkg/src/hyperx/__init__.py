"""Exact tools for extension complexity bounds of hypersimplices and small polytopes."""

__version__ = "0.1.0"
