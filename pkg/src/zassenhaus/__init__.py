"""Partial-augmentation verifier for the Zassenhaus conjecture on torsion units."""

__version__ = "0.1.0"
