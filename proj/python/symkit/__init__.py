"""Harmonic analysis on noncompact symmetric spaces (Python front end of the C++ core)."""

from ._core import *  # noqa: F401,F403
from ._core import SymmetricSpace, SymkitError

__all__ = [name for name in dir() if not name.startswith("_")]
