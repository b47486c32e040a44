"""Quadratic binary operads, their duals and black-square products, dual bar
complexes, associahedron splittings, and exact Koszulity checks."""

__version__ = "0.1.0"
