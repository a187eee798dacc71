"""Word-gesture decoding engine: swipe decoding, keyboard-aware spelling
correction, contextual language modeling and score fusion, plus the
simulation/benchmark harness."""

from swipekit._core import *  # noqa: F401,F403
from swipekit._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc
