"""Tau-tilting finiteness screening via Cartan matrices and two-term silting."""

__version__ = "0.1.0"
