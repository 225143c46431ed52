"""Tikhonov spectrum restoration with training-example parameter selection.

Thin wrapper over the compiled extension; all numerics live in C++.
"""

from ._speckit import *  # noqa: F401,F403
from ._speckit import __version__  # noqa: F401
