"""Equivariant reduced Euler characteristics of symplectic buildings.

Exact generating functions over Z[q], polynomial identity checks and a
brute-force oracle over small finite fields.
"""

__version__ = "0.1.0"
