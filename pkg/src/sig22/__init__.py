"""Indecomposable non-semisimple pseudo-Riemannian symmetric spaces of signature (2,2)."""

__version__ = "0.1.0"
