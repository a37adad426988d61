"""Toolkit for branching conditions on Coxeter presentation graphs.

Builds the finite-geometry graph families, certifies branching conditions
with explicit cycle witnesses, grows verified round-tree stages inside the
Davis complex, runs the flag-no-square surface-triangulation pipeline, and
evaluates the associated conformal-dimension and genus bounds.
"""

__version__ = "0.1.0"
