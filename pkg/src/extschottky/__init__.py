"""Extended Z_2n-Schottky groups: construction, classification and census."""

__version__ = "0.1.0"
