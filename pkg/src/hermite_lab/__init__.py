"""Exact field-generic constructions around Hermite reciprocity and the Kronecker-plethysm isomorphism."""

__version__ = "0.1.0"
