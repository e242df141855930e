"""A4-symmetric tensegrity: exact reconstruction and verification toolkit."""

__version__ = "0.1.0"
