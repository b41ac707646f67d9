"""Exact arithmetic for based root data, pinned automorphisms and duality involutions."""
from .root_datum import BasedRootDatum, FiniteAbelianGroup, build, gl, so_even, so_odd, sp

__version__ = "0.1.0"

__all__ = ["BasedRootDatum", "FiniteAbelianGroup", "build", "gl", "sp", "so_odd", "so_even"]
