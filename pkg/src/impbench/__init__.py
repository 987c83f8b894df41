"""Implication tables on finite distributive lattices, and the spaces,
frames, and representations built on top of them."""

from .errors import Diagnostic, SelfCheckError

__version__ = "0.1.0"

__all__ = ["Diagnostic", "SelfCheckError", "__version__"]
