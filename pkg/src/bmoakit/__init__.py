"""Numerics for BMOA, Hardy spaces and weighted composition operators on the disc."""

__version__ = "0.1.0"
