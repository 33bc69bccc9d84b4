"""Numerical laboratory for d-decaying Gauss-like infinite iterated function systems."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
