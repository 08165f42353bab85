"""Exact open and closed virtual structure constants and disk invariants of
projective hypersurfaces and complete intersections."""

__version__ = "0.1.0"

from .geometry import GeometryData

__all__ = ["GeometryData", "__version__"]
