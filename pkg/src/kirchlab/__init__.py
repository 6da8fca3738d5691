"""Numerical laboratory for Kirchhoff frames on spheres."""
__version__ = "0.1.0"
