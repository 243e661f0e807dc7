"""Exact verification of four-simplex solutions, their nonconstant cohomology,
and the tetrahedron solutions obtained from them by weighted partial traces."""

__version__ = "0.1.0"
