"""Exact combinatorial toolkit for ice quivers with potential, compatible
Poisson pairs, cluster seed mutation, green sequences and graded Ext tables."""

__version__ = "0.1.0"
