"""Exact curvature computations for 3-webs and bi-Lagrangian structures on Painleve cubic surfaces."""

__version__ = "0.1.0"
