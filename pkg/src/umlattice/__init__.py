"""Uniform modular lattices and their affine buildings of type A."""

__version__ = "0.1.0"
