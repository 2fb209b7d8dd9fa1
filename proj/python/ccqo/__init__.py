"""Cardinality-constrained convex quadratic optimization.

Exact solvers (flag-box branch-and-bound and a classical feature-selection
branch-and-bound baseline), the SFS swap heuristic, a brute-force oracle,
synthetic best-subset-selection instances, and benchmarking metrics.
"""

from ._ccqo import *  # noqa: F401,F403
from ._ccqo import __version__  # noqa: F401
