"""Automorphism-group loci of hyperelliptic curves, in exact arithmetic."""

__version__ = "0.1.0"
