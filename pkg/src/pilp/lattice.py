"""Lattice widths, flatness constants, and integer-hull vertex supersets.

Width of a partially open polyhedron means width of its closure: widths feed
slab enumeration over integer points, and integer points of P lie in the
closure.  The finite-width test and the exact lattice width of a fixed
polyhedron both go through the parametric machinery, which certifies the
candidate direction set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from pilp import lp
from pilp.config import DEFAULT_CONFIG, Config
from pilp.numkernel import (
    Rat,
    RatMatrix,
    dot,
    lcm_int,
    normalize_full_column_rank,
    primitive_vector,
    rat,
)
from pilp.polyhedron import (
    LinearConstraint,
    PartiallyOpenPolyhedron,
    enumerate_bases,
    is_feasible,
)

_INT64_GUARD = 2**62


def flatness_constant(n: int, config: Config = DEFAULT_CONFIG) -> Rat:
    """Configured upper bound on the flatness constant for dimension n."""
    return config.flatness_constant(n)


@dataclass(frozen=True)
class WidthResult:
    """Lattice width and an optimal primitive direction (None means infinite)."""

    width: Rat | None
    direction: tuple[int, ...] | None

    @property
    def finite(self) -> bool:
        return self.width is not None


def width_along(
    poly: PartiallyOpenPolyhedron, c: Sequence[Rat]
) -> Rat | None:
    """sup - inf of c . x over the closure; None when either side is unbounded."""
    cvec = [rat(x) for x in c]
    if all(x == 0 for x in cvec):
        raise ValueError("direction must be nonzero")
    feasible, _ = is_feasible(poly.closure())
    if not feasible:
        raise ValueError("width of an empty polyhedron")
    rows = poly.closed_rows()
    hi = lp.solve_max(rows, cvec)
    lo = lp.solve_max(rows, [-x for x in cvec])
    if hi.status == lp.UNBOUNDED or lo.status == lp.UNBOUNDED:
        return None
    return hi.value + lo.value


def _as_matrix_system(
    poly: PartiallyOpenPolyhedron,
) -> tuple[RatMatrix, list[Rat]]:
    if not poly.constraints:
        raise ValueError("polyhedron must have at least one constraint")
    A = RatMatrix([list(c.a) for c in poly.constraints])
    b = [c.beta for c in poly.constraints]
    return A, b


def lattice_width(
    poly: PartiallyOpenPolyhedron, config: Config = DEFAULT_CONFIG
) -> WidthResult:
    """Exact lattice width of a fixed non-empty polyhedron given as A x <= b.

    Evaluates the parametric candidate directions at this right-hand side
    and takes the minimum; returns the infinite marker when the parametric
    finite-width test fails.
    """
    from pilp import paramwidth  # local import; paramwidth builds on this module

    feasible, _ = is_feasible(poly.closure())
    if not feasible:
        raise ValueError("lattice width of an empty polyhedron")
    if not poly.constraints:
        return WidthResult(None, None)
    A, b = _as_matrix_system(poly)
    norm = normalize_full_column_rank(A)
    if norm.aprime is None:
        return WidthResult(None, None)
    reduced = norm.aprime
    if not finite_width_test(reduced):
        return WidthResult(None, None)
    triples = paramwidth.flat_direction_triples(reduced, config=config)
    best: Rat | None = None
    best_c: tuple[int, ...] | None = None
    for triple in triples:
        value = dot(triple.width_functional, b)
        if best is None or value < best:
            best = value
            best_c = triple.c
    assert best is not None and best_c is not None
    if norm.dropped:
        # lift the direction back through the unimodular compression
        uinv = norm.U.inverse()
        padded = tuple(best_c) + (0,) * norm.dropped
        lifted = tuple(
            sum(padded[i] * uinv.data[i][j] for i in range(len(padded)))
            for j in range(len(padded))
        )
        best_c = primitive_vector(lifted)
    return WidthResult(best, best_c)


def finite_width_test(A: RatMatrix, config: Config = DEFAULT_CONFIG) -> bool:
    """Whether the parametric polyhedron A x <= b has finite lattice width.

    Checks basis pairs for a common direction of the two bounding cones: LP
    feasibility of c D1 <= 0, c D2 <= 0, c D1 1 <= -1.  A nonzero rational
    solution scales to an integral one, so LP feasibility is enough.
    """
    bases = enumerate_bases(A)  # raises on rank deficiency
    for i, n1 in enumerate(bases):
        for n2 in bases[i + 1:]:
            rows = _cone_cut_rows(A, n1, n2)
            if lp.feasible_point([(r.a, r.beta) for r in rows], A.ncols) is not None:
                return True
    return False


def _integral_cone_matrix(inv: RatMatrix) -> list[list[int]]:
    """Scale each column of a rational matrix to integers (positive factors)."""
    n = inv.nrows
    cols = []
    for j in range(n):
        col = [inv.data[i][j] for i in range(n)]
        den = 1
        for x in col:
            den = lcm_int(den, x.denominator)
        cols.append([int(x.numerator) * (den // x.denominator) for x in col])
    return cols


def cone_cut_system(
    A: RatMatrix, basis1: Sequence[int], basis2: Sequence[int]
) -> PartiallyOpenPolyhedron:
    """The direction polyhedron {c : c D1 <= 0, c D2 <= 0, c D1 1 <= -1}.

    D1 and D2 are integral representations of the cones spanned by the rows
    of A_N1 and by the negated rows of A_N2; the single extra inequality
    cuts off the origin while keeping every other integral direction.
    """
    return PartiallyOpenPolyhedron(A.ncols, _cone_cut_rows(A, basis1, basis2))


def _cone_cut_rows(A, basis1, basis2) -> list[LinearConstraint]:
    inv1 = A.rows_subset(basis1).inverse()
    inv2 = A.rows_subset(basis2).inverse()
    d1_cols = [[-v for v in col] for col in _integral_cone_matrix(inv1)]
    d2_cols = _integral_cone_matrix(inv2)
    rows = []
    for col in d1_cols:
        rows.append(LinearConstraint(tuple(rat(x) for x in col), rat(0), False))
    for col in d2_cols:
        rows.append(LinearConstraint(tuple(rat(x) for x in col), rat(0), False))
    ones = [sum(col[i] for col in d1_cols) for i in range(A.ncols)]
    rows.append(LinearConstraint(tuple(rat(x) for x in ones), rat(-1), False))
    return rows


def _int_points_box(
    poly: PartiallyOpenPolyhedron, lower: Sequence[int], upper: Sequence[int]
) -> list[tuple[int, ...]]:
    """Integral points of P in a box (internal; not the test oracle)."""
    scaled = []
    for c in poly.constraints:
        den = 1
        for x in (*c.a, c.beta):
            den = lcm_int(den, x.denominator)
        avec = [int(x.numerator) * (den // x.denominator) for x in c.a]
        beta = int(c.beta.numerator) * (den // c.beta.denominator)
        scaled.append((avec, beta, c.strict))
    coord_mag = max(
        (max(abs(int(l)), abs(int(u))) for l, u in zip(lower, upper)), default=0
    )
    count = 1
    for lo, hi in zip(lower, upper):
        if hi < lo:
            return []
        count *= hi - lo + 1
    worst = max(
        (sum(abs(a) for a in avec) * coord_mag + abs(beta)
         for avec, beta, _ in scaled),
        default=0,
    )
    if worst < _INT64_GUARD and count <= 8_000_000:
        grids = np.meshgrid(
            *[np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in zip(lower, upper)],
            indexing="ij",
        )
        pts = np.stack([g.reshape(-1) for g in grids], axis=1)
        mask = np.ones(len(pts), dtype=bool)
        for avec, beta, strict in scaled:
            vals = pts @ np.array(avec, dtype=np.int64)
            mask &= (vals < beta) if strict else (vals <= beta)
        return sorted(tuple(int(v) for v in p) for p in pts[mask])
    out = []
    for pt in itertools.product(*[range(lo, hi + 1) for lo, hi in zip(lower, upper)]):
        if all(
            (sum(a * x for a, x in zip(avec, pt)) < beta) if strict
            else (sum(a * x for a, x in zip(avec, pt)) <= beta)
            for avec, beta, strict in scaled
        ):
            out.append(pt)
    return sorted(out)


def integer_hull_vertex_superset(
    poly: PartiallyOpenPolyhedron,
    bound: int,
    filter_extreme: bool = True,
) -> list[tuple[int, ...]]:
    """Integral points of the closed polyhedron with max-norm <= bound.

    Optionally filtered to points in convex position; either way the result
    is a superset of the integer-hull vertices whose coordinates fit inside
    the bound (the caller certifies sufficiency of the bound).
    """
    closure = poly.closure()
    lower, upper = [], []
    for i in range(poly.dim):
        e = [rat(0)] * poly.dim
        e[i] = rat(1)
        hi = lp.solve_max(closure.closed_rows(), e)
        lo = lp.solve_max(closure.closed_rows(), [-x for x in e])
        if hi.status == lp.INFEASIBLE or lo.status == lp.INFEASIBLE:
            return []
        upper.append(
            min(bound, _floor_rat(hi.value)) if hi.status == lp.OPTIMAL else bound
        )
        lower.append(
            max(-bound, -_floor_rat(lo.value)) if lo.status == lp.OPTIMAL else -bound
        )
    points = _int_points_box(closure, lower, upper)
    if not filter_extreme or len(points) <= 2:
        return points
    if poly.dim == 1:
        return sorted({points[0], points[-1]})
    if poly.dim == 2:
        return _hull_2d(points)
    if len(points) <= 400:
        return _extreme_filter_lp(points)
    return points


def _floor_rat(x: Rat) -> int:
    return x.numerator // x.denominator


def _hull_2d(points: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Exact convex hull vertices (Andrew monotone chain on sorted points)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return sorted(set(lower[:-1] + upper[:-1]))


def _extreme_filter_lp(points: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Keep points not in the convex hull of the others (exact LP test)."""
    kept = []
    for idx, p in enumerate(points):
        others = [q for j, q in enumerate(points) if j != idx]
        if not _in_convex_hull(p, others):
            kept.append(p)
    return kept


def _in_convex_hull(p, points) -> bool:
    # feasibility of sum lambda_i q_i = p, sum lambda_i = 1, lambda >= 0
    k = len(points)
    if k == 0:
        return False
    n = len(p)
    rows: list[tuple[list[Rat], Rat]] = []
    for i in range(n):
        coeffs = [rat(q[i]) for q in points]
        rows.append((coeffs, rat(p[i])))
        rows.append(([-x for x in coeffs], rat(-p[i])))
    rows.append(([rat(1)] * k, rat(1)))
    rows.append(([rat(-1)] * k, rat(-1)))
    for j in range(k):
        e = [rat(0)] * k
        e[j] = rat(-1)
        rows.append((e, rat(0)))
    return lp.feasible_point(rows, k) is not None
