"""Exact lattice computations for Néron models of degenerating Hodge structures."""
__version__ = "0.1.0"
