"""Directed pathwidth, obstacle certificates and uniform-marginal independent sets."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
