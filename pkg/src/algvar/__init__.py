"""Exact verification of finite-dimensional algebra classifications."""

__version__ = "0.1.0"
