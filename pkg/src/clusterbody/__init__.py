"""Cluster seeds of reduced words, lowest-term valuations and Newton-Okounkov polytopes.

Modules
-------
rootsys
    Cartan data, Weyl group words and index bookkeeping.
exchange
    Exchange matrices, mutation, orders and quivers.
symfun
    Exact Laurent polynomials and rational functions.
cluster
    Seeds, mutation sequences, X-hat variables and g-vectors.
minors
    Unipotent charts, generalized minors and function spaces.
polyhedra
    Exact polyhedra, lattice points and piecewise-linear images.
okounkov
    Valuations, transition matrices, polytopes and cross checks.
cli
    Command line front end.
"""

from __future__ import annotations

from .rootsys import CartanData, Weight, WordData, cartan, word_data

__all__ = ["CartanData", "Weight", "WordData", "cartan", "word_data"]
__version__ = "0.1.0"
