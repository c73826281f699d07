"""Exact workbench for quantum symmetries of Hilbert modules with orthogonal filtrations."""

__version__ = "0.1.0"
