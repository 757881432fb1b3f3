"""Exact-arithmetic parametric integer linear programming in fixed dimension.

The package decides forall-exists sentences over integer projections of
polyhedra, partitions right-hand-side space by lattice-width direction,
solves fixed-dimension integer feasibility, and computes the maximum
integer programming gap of a constraint matrix and objective.  Every
computation is exact over the rationals; brute-force oracles double-check
the clever algorithms at desk scale.
"""

from pilp.numkernel import Rat, rat, rat_str

__all__ = ["Rat", "rat", "rat_str"]

__version__ = "0.1.0"
