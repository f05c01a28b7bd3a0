"""Exact lattice invariants and decision procedures for algebraic and
transcendental lattices of cubic fourfolds."""

__version__ = "0.1.0"
