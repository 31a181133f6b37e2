"""qlattice - Exact verification of incidence and Gorenstein identities for subspace lattices over finite fields."""

__version__ = "1.0.0"
__author__ = "qlattice Team"
