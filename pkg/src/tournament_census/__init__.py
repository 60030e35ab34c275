"""Exact counting and detection of small sub-tournaments."""

__version__ = "0.1.0"
