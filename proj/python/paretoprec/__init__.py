"""Pareto-optimal MIMO precoding under per-antenna power constraints."""

from paretoprec._core import *  # noqa: F401,F403
from paretoprec._core import __doc__  # noqa: F401
