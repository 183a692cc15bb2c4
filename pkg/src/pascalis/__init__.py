"""Exact determinants, LU factorizations and positivity certificates for Pascal tensors."""

__version__ = "0.1.0"
