"""Exact computation with mixed Hodge structures as equivariant connections."""

__version__ = "0.1.0"
