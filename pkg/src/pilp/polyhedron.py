"""Partially open rational polyhedra and exact operations on them.

A partially open polyhedron is a finite intersection of closed and strict
half-spaces.  Strict rows are what make exact partitions of space possible;
they also make suprema possibly unattained, so the LP layer reports an
attainment flag next to the exact optimum.  Feasibility with strict rows is
reduced to a closed LP through a single interiority slack.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from pilp import lp
from pilp.numkernel import (
    Rat,
    RatMatrix,
    dot,
    gcd_int,
    lcm_int,
    rat,
    rat_str,
)

MAX_SENSE = "max"
MIN_SENSE = "min"


@dataclass(frozen=True)
class LinearConstraint:
    """A single row  a . x <= beta  (or < beta when strict)."""

    a: tuple
    beta: Rat
    strict: bool = False

    @classmethod
    def make(cls, a: Iterable, beta, strict: bool = False) -> "LinearConstraint":
        return cls(tuple(rat(x) for x in a), rat(beta), bool(strict))

    def arity(self) -> int:
        return len(self.a)

    def is_constant(self) -> bool:
        return all(x == 0 for x in self.a)

    def constant_truth(self) -> bool | None:
        """True/False for constant rows, None for genuine constraints."""
        if not self.is_constant():
            return None
        return (0 < self.beta) if self.strict else (0 <= self.beta)

    def satisfied_by(self, point: Sequence[Rat]) -> bool:
        lhs = dot(self.a, point)
        return lhs < self.beta if self.strict else lhs <= self.beta

    def canonical(self) -> tuple:
        """Scale by a positive rational to primitive integer data (dedup key)."""
        den = 1
        for x in (*self.a, self.beta):
            den = lcm_int(den, x.denominator)
        ints = [int(x.numerator) * (den // x.denominator) for x in self.a]
        bint = int(self.beta.numerator) * (den // self.beta.denominator)
        g = 0
        for v in (*ints, bint):
            g = gcd_int(g, v)
        if g > 1:
            ints = [v // g for v in ints]
            bint //= g
        return (tuple(ints), bint, self.strict)

    def negation(self) -> "LinearConstraint":
        """The complement half-space: not(a x <= b) is -a x < -b and vice versa."""
        return LinearConstraint(
            tuple(-x for x in self.a), -self.beta, not self.strict
        )

    def pad(self, extra: int, front: int = 0) -> "LinearConstraint":
        """Same row over a wider variable space (zeros added)."""
        zeros_front = tuple(rat(0) for _ in range(front))
        zeros_back = tuple(rat(0) for _ in range(extra))
        return LinearConstraint(zeros_front + self.a + zeros_back, self.beta, self.strict)

    def to_json_dict(self) -> dict:
        return {
            "a": [rat_str(x) for x in self.a],
            "beta": rat_str(self.beta),
            "strict": self.strict,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "LinearConstraint":
        return cls.make(
            [rat(x) for x in obj["a"]], rat(obj["beta"]), obj.get("strict", False)
        )


class PartiallyOpenPolyhedron:
    """Finite system of closed/strict inequalities over a fixed arity.

    Constant-true rows are resolved away at construction; constant-false
    rows are kept so emptiness survives projections and serialization.
    """

    __slots__ = ("dim", "constraints")

    def __init__(self, dim: int, constraints: Iterable[LinearConstraint] = ()):
        if dim < 0:
            raise ValueError("dimension must be >= 0")
        kept = []
        for c in constraints:
            if c.arity() != dim:
                raise ValueError("constraint arity mismatch")
            if c.constant_truth() is True:
                continue
            kept.append(c)
        self.dim = dim
        self.constraints = tuple(kept)

    @classmethod
    def from_rows(
        cls, dim: int, rows: Iterable[tuple[Iterable, object, bool]]
    ) -> "PartiallyOpenPolyhedron":
        return cls(dim, [LinearConstraint.make(a, b, s) for a, b, s in rows])

    @classmethod
    def whole_space(cls, dim: int) -> "PartiallyOpenPolyhedron":
        return cls(dim, ())

    @classmethod
    def empty(cls, dim: int) -> "PartiallyOpenPolyhedron":
        false_row = LinearConstraint.make([0] * dim, -1, False)
        return cls(dim, (false_row,))

    def contains(self, point: Sequence[Rat]) -> bool:
        if len(point) != self.dim:
            raise ValueError("point arity mismatch")
        pt = tuple(rat(x) for x in point)
        return all(c.satisfied_by(pt) for c in self.constraints)

    def closure(self) -> "PartiallyOpenPolyhedron":
        return PartiallyOpenPolyhedron(
            self.dim,
            [LinearConstraint(c.a, c.beta, False) for c in self.constraints],
        )

    def closed_rows(self) -> list[tuple[tuple, Rat]]:
        """(a, beta) pairs of the closed relaxation, for the LP layer."""
        return [(c.a, c.beta) for c in self.constraints]

    def intersect(self, other: "PartiallyOpenPolyhedron") -> "PartiallyOpenPolyhedron":
        assert self.dim == other.dim
        return PartiallyOpenPolyhedron(
            self.dim, self.constraints + other.constraints
        )

    def with_constraints(
        self, extra: Iterable[LinearConstraint]
    ) -> "PartiallyOpenPolyhedron":
        return PartiallyOpenPolyhedron(self.dim, self.constraints + tuple(extra))

    def deduplicated(self) -> "PartiallyOpenPolyhedron":
        """Drop repeated rows and rows dominated by a same-direction row."""
        best: dict[tuple, LinearConstraint] = {}
        order: list[tuple] = []
        for c in self.constraints:
            avec, bval, strict = c.canonical()
            key = avec
            cand = (rat(bval), 0 if strict else 1)
            if key not in best:
                best[key] = c
                order.append(key)
            else:
                cur = best[key]
                ca, cb, cs = cur.canonical()
                cur_rank = (rat(cb), 0 if cs else 1)
                if cand < cur_rank:
                    best[key] = c
        return PartiallyOpenPolyhedron(self.dim, [best[k] for k in order])

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "constraints": [c.to_json_dict() for c in self.constraints],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "PartiallyOpenPolyhedron":
        return cls(
            int(obj["dim"]),
            [LinearConstraint.from_json_dict(c) for c in obj.get("constraints", [])],
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PartiallyOpenPolyhedron)
            and self.dim == other.dim
            and self.constraints == other.constraints
        )

    def __repr__(self) -> str:
        return f"PartiallyOpenPolyhedron(dim={self.dim}, rows={len(self.constraints)})"


@dataclass(frozen=True)
class LpOutcome:
    """Exact optimum of a linear function over a partially open polyhedron."""

    status: str  # "infeasible" | "unbounded" | "finite"
    value: Rat | None = None
    attained: bool = False
    point: tuple | None = None


def is_feasible(
    poly: PartiallyOpenPolyhedron,
) -> tuple[bool, tuple | None]:
    """Exact feasibility including strict rows; returns (verdict, witness).

    Reduction: maximize an interiority slack t with  a x + t <= beta  on
    strict rows, a x <= beta on closed rows, t <= 1.  The polyhedron is
    non-empty iff the optimum is positive.
    """
    n = poly.dim
    rows: list[tuple[tuple, Rat]] = []
    for c in poly.constraints:
        t_coef = rat(1) if c.strict else rat(0)
        rows.append((c.a + (t_coef,), c.beta))
    rows.append((tuple(rat(0) for _ in range(n)) + (rat(1),), rat(1)))
    objective = [rat(0)] * n + [rat(1)]
    res = lp.solve_max(rows, objective, stop_above=rat(0))
    if res.status != lp.OPTIMAL or res.value <= 0:
        return False, None
    witness = res.point[:n]
    assert poly.contains(witness)
    return True, witness


def lp_optimize(
    poly: PartiallyOpenPolyhedron,
    objective: Sequence[Rat],
    sense: str = MAX_SENSE,
) -> LpOutcome:
    """Exact sup/inf of objective . x over the polyhedron, with attainment.

    For a non-empty partially open polyhedron the closure equals the closed
    relaxation, so the supremum is the closed LP optimum; attainment is
    decided by intersecting the optimal face with the strict rows.
    """
    if sense not in (MAX_SENSE, MIN_SENSE):
        raise ValueError("sense must be 'max' or 'min'")
    obj = [rat(x) for x in objective]
    if len(obj) != poly.dim:
        raise ValueError("objective arity mismatch")
    feasible, _ = is_feasible(poly)
    if not feasible:
        return LpOutcome("infeasible")
    signed = obj if sense == MAX_SENSE else [-x for x in obj]
    res = lp.solve_max(poly.closed_rows(), signed)
    if res.status == lp.UNBOUNDED:
        return LpOutcome("unbounded")
    assert res.status == lp.OPTIMAL
    closed_value = res.value
    value = closed_value if sense == MAX_SENSE else -closed_value
    face = poly.with_constraints([
        LinearConstraint(tuple(signed), closed_value, False),
        LinearConstraint(tuple(-x for x in signed), -closed_value, False),
    ])
    attained, point = is_feasible(face)
    return LpOutcome("finite", value, attained, point)


def fm_eliminate(
    poly: PartiallyOpenPolyhedron, k: int
) -> PartiallyOpenPolyhedron:
    """Fourier-Motzkin elimination of variable k (exact projection).

    A combined row is strict iff either parent is strict.  Output rows are
    deduplicated up to positive scaling after each elimination.
    """
    if not 0 <= k < poly.dim:
        raise ValueError("variable index out of range")
    pos, neg, zero = [], [], []
    for c in poly.constraints:
        coef = c.a[k]
        if coef > 0:
            pos.append(c)
        elif coef < 0:
            neg.append(c)
        else:
            zero.append(c)

    def drop(c: LinearConstraint) -> LinearConstraint:
        return LinearConstraint(c.a[:k] + c.a[k + 1:], c.beta, c.strict)

    new_rows = [drop(c) for c in zero]
    for cp in pos:
        alpha = cp.a[k]
        for cn in neg:
            gamma = cn.a[k]
            # (-gamma) * row_pos + alpha * row_neg cancels variable k
            a = tuple(
                -gamma * x + alpha * y for x, y in zip(cp.a, cn.a)
            )
            beta = -gamma * cp.beta + alpha * cn.beta
            row = LinearConstraint(a, beta, cp.strict or cn.strict)
            new_rows.append(drop(row))
    return PartiallyOpenPolyhedron(poly.dim - 1, new_rows).deduplicated()


def fm_project_prefix(
    poly: PartiallyOpenPolyhedron, keep: int
) -> PartiallyOpenPolyhedron:
    """Project onto the first ``keep`` coordinates by eliminating the rest."""
    out = poly
    while out.dim > keep:
        out = fm_eliminate(out, out.dim - 1)
    return out


def enumerate_bases(A: RatMatrix) -> list[tuple[int, ...]]:
    """All row index sets N with A_N non-singular, in lexicographic order."""
    n = A.ncols
    if A.rank() < n:
        raise ValueError("matrix does not have full column rank")
    bases = []
    for combo in itertools.combinations(range(A.nrows), n):
        if A.rows_subset(combo).determinant() != 0:
            bases.append(combo)
    return bases


def polytope_vertices(poly: PartiallyOpenPolyhedron) -> list[tuple]:
    """Vertices of the closure by basic-solution enumeration (pointed P).

    Exhaustive over row bases, so only meant for desk-scale systems.
    """
    if not poly.constraints:
        raise ValueError("free space has no vertices")
    A = RatMatrix([list(c.a) for c in poly.constraints])
    if A.rank() < poly.dim:
        return []
    b = [c.beta for c in poly.constraints]
    closure = poly.closure()
    verts = set()
    for basis in enumerate_bases(A):
        sub = A.rows_subset(basis)
        vertex = sub.inverse().vec_mul([b[i] for i in basis])
        if closure.contains(vertex):
            verts.add(vertex)
    return sorted(verts)


def translate(
    poly: PartiallyOpenPolyhedron, v: Sequence[Rat]
) -> PartiallyOpenPolyhedron:
    """The translate v + P."""
    vv = tuple(rat(x) for x in v)
    assert len(vv) == poly.dim
    return PartiallyOpenPolyhedron(
        poly.dim,
        [
            LinearConstraint(c.a, c.beta + dot(c.a, vv), c.strict)
            for c in poly.constraints
        ],
    )


def scale(poly: PartiallyOpenPolyhedron, alpha: Rat) -> PartiallyOpenPolyhedron:
    """The scaled set alpha * P, alpha >= 0."""
    al = rat(alpha)
    if al < 0:
        raise ValueError("scale factor must be >= 0")
    if al > 0:
        return PartiallyOpenPolyhedron(
            poly.dim,
            [LinearConstraint(c.a, c.beta * al, c.strict) for c in poly.constraints],
        )
    feasible, _ = is_feasible(poly)
    if not feasible:
        return PartiallyOpenPolyhedron.empty(poly.dim)
    if is_unbounded(poly):
        raise ValueError("degenerate scale: alpha = 0 on an unbounded polyhedron")
    rows = []
    for i in range(poly.dim):
        e = [rat(0)] * poly.dim
        e[i] = rat(1)
        rows.append(LinearConstraint(tuple(e), rat(0), False))
        rows.append(LinearConstraint(tuple(-x for x in e), rat(0), False))
    return PartiallyOpenPolyhedron(poly.dim, rows)


def affine_image(
    poly: PartiallyOpenPolyhedron, v: Sequence[Rat], alpha: Rat
) -> PartiallyOpenPolyhedron:
    """The set v + alpha * P."""
    return translate(scale(poly, alpha), v)


def is_unbounded(poly: PartiallyOpenPolyhedron) -> bool:
    """True iff some coordinate is unbounded over the closure."""
    for i in range(poly.dim):
        e = [rat(0)] * poly.dim
        e[i] = rat(1)
        for sign in (1, -1):
            obj = [rat(sign) * x for x in e]
            res = lp.solve_max(poly.closed_rows(), obj)
            if res.status == lp.UNBOUNDED:
                return True
    return False


def remove_redundant(
    poly: PartiallyOpenPolyhedron,
) -> PartiallyOpenPolyhedron:
    """LP-based redundancy pruning (optional pass; conservative on strict rows).

    A closed row is dropped when the remaining closure already implies it; a
    strict row additionally needs strict implication (sup < beta) so boundary
    points are not silently re-admitted.
    """
    rows = list(poly.deduplicated().constraints)
    kept: list[LinearConstraint] = []
    for i, c in enumerate(rows):
        others = [r for j, r in enumerate(rows)
                  if (j < i and r in kept) or j > i]
        system = [(r.a, r.beta) for r in others]
        res = lp.solve_max(system, list(c.a))
        if res.status == lp.INFEASIBLE:
            kept.append(c)
            continue
        if res.status == lp.OPTIMAL:
            if c.strict and res.value < c.beta:
                continue
            if not c.strict and res.value <= c.beta:
                continue
        kept.append(c)
    return PartiallyOpenPolyhedron(poly.dim, kept)
