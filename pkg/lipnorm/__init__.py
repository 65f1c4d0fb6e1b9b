"""Exact dual bounded-Lipschitz and Fortet-Mourier norms on finite metric spaces."""

__version__ = '0.3.0'
