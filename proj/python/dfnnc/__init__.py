"""Rate computations for Gaussian one-way and two-way relay channels."""

from ._core import *  # noqa: F401,F403
