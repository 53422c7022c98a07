"""High-precision verification of partial-fraction series identities."""

__version__ = "0.1.0"
