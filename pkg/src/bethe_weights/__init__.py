"""Exact nested Bethe vectors (weight functions) for Yangian and quantum affine gl_N."""

__version__ = "0.1.0"
