"""Exact q-series and 13-adic machinery for partition congruence checking."""

from .rings import EXACT, Ring, Valuation, inv_mod, jacobi, residue_ring, val13

__all__ = [
    "EXACT",
    "Ring",
    "Valuation",
    "inv_mod",
    "jacobi",
    "residue_ring",
    "val13",
]

__version__ = "0.1.0"
