"""Brute-force reference implementations used for testing and verification.

Everything here is definitionally exhaustive: integer points by membership
over a finite box, lattice width by direction enumeration, forall-exists and
gap checks over rational grids.  The oracles share nothing with the clever
algorithms except polyhedron membership and LP, so agreement is meaningful
evidence.  Grid oracles are one-sided: a counterexample refutes, a pass does
not prove.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from pilp.numkernel import (
    Rat,
    RatMatrix,
    dot,
    lcm_int,
    primitive_vector,
    rat,
)
from pilp.polyhedron import (
    PartiallyOpenPolyhedron,
    lp_optimize,
    polytope_vertices,
)

_INT64_GUARD = 2**62


@dataclass(frozen=True)
class Box:
    """Axis-aligned integer box, inclusive on both ends."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("box arity mismatch")
        if any(l > u for l, u in zip(self.lower, self.upper)):
            raise ValueError("box must satisfy lower <= upper")

    @classmethod
    def cube(cls, dim: int, radius: int) -> "Box":
        return cls(tuple([-radius] * dim), tuple([radius] * dim))

    @property
    def dim(self) -> int:
        return len(self.lower)

    def point_count(self) -> int:
        count = 1
        for lo, hi in zip(self.lower, self.upper):
            count *= hi - lo + 1
        return count

    def points(self) -> Iterable[tuple[int, ...]]:
        ranges = [range(lo, hi + 1) for lo, hi in zip(self.lower, self.upper)]
        return itertools.product(*ranges)


def _scaled_int_rows(poly: PartiallyOpenPolyhedron):
    """Each row scaled by a positive integer to integral (a, beta, strict)."""
    rows = []
    for c in poly.constraints:
        den = 1
        for x in (*c.a, c.beta):
            den = lcm_int(den, x.denominator)
        avec = [int(x.numerator) * (den // x.denominator) for x in c.a]
        beta = int(c.beta.numerator) * (den // c.beta.denominator)
        rows.append((avec, beta, c.strict))
    return rows


def brute_int_points(
    poly: PartiallyOpenPolyhedron, box: Box
) -> list[tuple[int, ...]]:
    """Exactly the integral points of P inside the box, lex sorted.

    Vectorized over int64 when magnitudes are provably safe, otherwise a
    plain exact loop.
    """
    if box.dim != poly.dim:
        raise ValueError("box arity mismatch")
    rows = _scaled_int_rows(poly)
    if not rows:
        return sorted(box.points())

    coord_mag = max(max(abs(l), abs(u)) for l, u in zip(box.lower, box.upper))
    worst = max(
        sum(abs(a) for a in avec) * coord_mag + abs(beta)
        for avec, beta, _ in rows
    )
    if worst < _INT64_GUARD and box.point_count() <= 8_000_000:
        grids = np.meshgrid(
            *[np.arange(lo, hi + 1, dtype=np.int64)
              for lo, hi in zip(box.lower, box.upper)],
            indexing="ij",
        )
        pts = np.stack([g.reshape(-1) for g in grids], axis=1)
        mask = np.ones(len(pts), dtype=bool)
        for avec, beta, strict in rows:
            vals = pts @ np.array(avec, dtype=np.int64)
            mask &= (vals < beta) if strict else (vals <= beta)
        return sorted(tuple(int(v) for v in p) for p in pts[mask])

    result = []
    for pt in box.points():
        good = True
        for avec, beta, strict in rows:
            val = sum(a * x for a, x in zip(avec, pt))
            if (val >= beta) if strict else (val > beta):
                good = False
                break
        if good:
            result.append(pt)
    return sorted(result)


@dataclass(frozen=True)
class BruteWidth:
    width: Rat | None  # None encodes +infinity
    direction: tuple[int, ...] | None


def brute_lattice_width(
    poly: PartiallyOpenPolyhedron, norm_bound: int
) -> BruteWidth:
    """Minimum width over primitive directions with max-norm <= norm_bound.

    Exact for the closure of a bounded polyhedron as long as some optimal
    direction fits in the norm ball (caller certifies via the parametric
    machinery).
    """
    verts = polytope_vertices(poly)
    if not verts:
        raise ValueError("empty or unbounded polyhedron")
    n = poly.dim
    best: Rat | None = None
    best_dir: tuple[int, ...] | None = None
    for c in itertools.product(range(-norm_bound, norm_bound + 1), repeat=n):
        if all(x == 0 for x in c):
            continue
        first = next(x for x in c if x != 0)
        if first < 0:
            continue  # width is symmetric under negation
        if primitive_vector(c) != c:
            continue
        values = [dot([rat(x) for x in c], v) for v in verts]
        width = max(values) - min(values)
        if best is None or width < best:
            best = width
            best_dir = c
    return BruteWidth(best, best_dir)


@dataclass(frozen=True)
class GridSpec:
    """Rational grid: points lower + step * k inside an integer multiple box."""

    step: Rat
    b_box: Box
    z_box: Box | None = None
    x_box: Box | None = None

    def b_points(self) -> Iterable[tuple]:
        step = rat(self.step)
        for pt in self.b_box.points():
            yield tuple(step * k for k in pt)


@dataclass(frozen=True)
class GridVerdict:
    holds_on_grid: bool
    counterexample_b: tuple | None = None
    counterexample_z: tuple[int, ...] | None = None


def brute_forall_exists(
    A: RatMatrix,
    Q: PartiallyOpenPolyhedron,
    p: int,
    grid: GridSpec,
) -> GridVerdict:
    """Check the forall-exists sentence on a finite grid of right-hand sides.

    One-sided: a returned counterexample is definitive, a pass is only
    evidence.  Requires an x-box; integer feasibility of A x <= b is decided
    by exhaustive enumeration inside it.
    """
    m = A.nrows
    if Q.dim != m + p:
        raise ValueError("Q arity must be m + p")
    if grid.x_box is None:
        raise ValueError("grid must carry an x box")
    if p > 0 and grid.z_box is None:
        raise ValueError("boxed z range required when p > 0")

    for b in grid.b_points():
        z_hit: tuple[int, ...] | None = None
        if p == 0:
            if not Q.contains(b):
                continue
            z_hit = ()
        else:
            for z in grid.z_box.points():
                if Q.contains(b + tuple(rat(v) for v in z)):
                    z_hit = z
                    break
            if z_hit is None:
                continue
        target = PartiallyOpenPolyhedron(
            A.ncols,
            [
                _row_leq(A.row(i), b[i])
                for i in range(m)
            ],
        )
        if not brute_int_points(target, grid.x_box):
            return GridVerdict(False, b, z_hit)
    return GridVerdict(True)


def _row_leq(a, beta):
    from pilp.polyhedron import LinearConstraint

    return LinearConstraint(tuple(a), rat(beta), False)


def brute_gap(
    A: RatMatrix,
    c: Sequence[Rat],
    grid: GridSpec,
) -> Rat:
    """Max over grid b of LP value minus IP value, IP by enumeration.

    Only IP-feasible right-hand sides count; raises if the grid holds none.
    """
    if grid.x_box is None:
        raise ValueError("grid must carry an x box")
    cvec = [rat(x) for x in c]
    best: Rat | None = None
    for b in grid.b_points():
        target = PartiallyOpenPolyhedron(
            A.ncols, [_row_leq(A.row(i), b[i]) for i in range(A.nrows)]
        )
        points = brute_int_points(target, grid.x_box)
        if not points:
            continue
        ip_value = max(dot(cvec, [rat(x) for x in pt]) for pt in points)
        out = lp_optimize(target, cvec)
        if out.status != "finite":
            continue
        gap = out.value - ip_value
        if best is None or gap > best:
            best = gap
    if best is None:
        raise ValueError("no feasible grid point")
    return best
