"""Exact invariants of homology 4-tori: F2 cup products, projective SU(2)
representations of log-transformed tori, and Rohlin sums."""

__version__ = "0.1.0"
