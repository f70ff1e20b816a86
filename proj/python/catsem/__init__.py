"""Compositional vector semantics over pregroup grammars.

Wraps the C++ core: pregroup type reductions, named-axis tensor contraction,
filler/role tree binding, weight-filler factorization and pseudoinverse
unbinding.
"""

from catsem._core import *  # noqa: F401,F403
from catsem._core import __version__  # noqa: F401
