"""Cube category with connections, cubical sets, necklaces, path posets and
rigidification mapping spaces, with exact integer homology."""

__version__ = "0.1.0"
