"""helilink: periodic-orbit statistics, template-knot linking, helicity.

A desk-scale numerical laboratory built around three connected computations:
weighted counting and equidistribution of periodic orbits of suspension
flows (globally and within a homology class), linking numbers of the closed
curves those orbits trace on an embedded two-eared template, and helicity of
explicit Beltrami fields recovered as a limit of weighted average linking
numbers.
"""

from .backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
