"""Stereolab API: read-only HTTP access to the catalog, bounds and Dirichlet cells."""

__version__ = "0.1.0"
