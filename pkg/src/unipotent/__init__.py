"""Exact models of unipotent Jordan-block local systems and the combinatorics around them."""

__version__ = "0.1.0"
