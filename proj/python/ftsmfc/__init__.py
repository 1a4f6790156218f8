"""Finite-time-stable model-free control: observers, control laws and a closed-loop simulator."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
