"""Simulator and analyzer for loss-tolerant quantum oblivious transfer."""

from .config import LTOT_VERSION

__version__ = LTOT_VERSION
