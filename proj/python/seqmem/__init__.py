"""Sequence memory networks: update rules, capacity harness and theory."""

from ._seqmem import *  # noqa: F401,F403
from ._seqmem import __version__  # noqa: F401
