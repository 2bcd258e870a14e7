"""Task and energy aware sensor placement on a grid with RF charging."""

__version__ = "0.1.0"
