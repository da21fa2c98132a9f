"""Mesh smoothing by the geometric element transformation.

Thin wrapper over the C++ library; see README.md for the model.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
