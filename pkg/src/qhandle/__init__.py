"""Exact small quantum cohomology rings, the handle element, and circuit complexity."""

__version__ = "0.1.0"
