"""Finite geometry of multi-qubit Pauli contextuality."""

__version__ = "0.1.0"
