"""Exact osculating-space and Laplace-equation computations for projected Veronese and Segre varieties."""

__version__ = "0.1.0"
