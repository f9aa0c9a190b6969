"""Offline location codes: grid, word, short and street-relative schemes."""

from geocodec._core import *  # noqa: F401,F403
from geocodec._core import __version__  # noqa: F401
