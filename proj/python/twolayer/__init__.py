"""Trapped modes and resonances of thin cylinders in a two-layer fluid."""

from ._twolayer import *  # noqa: F401,F403
from ._twolayer import __version__  # noqa: F401
