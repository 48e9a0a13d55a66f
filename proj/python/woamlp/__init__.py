"""Whale-optimized MLP classification on fused feature tables."""

from ._woamlp import *  # noqa: F401,F403
from ._woamlp import __doc__  # noqa: F401
