"""Width-direction triples and the partition of right-hand-side space.

For a full-column-rank matrix A of finite parametric width, every basis pair
(N1, N2) spans a pair of cones of directions bounded above by the basic
solution of N1 and below by that of N2.  The integral candidate directions
are a vertex superset of the integer hull of the cone intersection with the
origin cut off; each gives a triple (F, G, c) of basic-solution maps and a
direction.  The minimum of c (F - G) b over the triples is the exact lattice
width of P_b, and comparing the functionals with a strict/weak tie-break
partitions any parameter region into cells with a unique width direction.
"""

from __future__ import annotations

from dataclasses import dataclass

from pilp.config import DEFAULT_CONFIG, Config
from pilp.lattice import (
    cone_cut_system,
    finite_width_test,
    integer_hull_vertex_superset,
)
from pilp.numkernel import (
    Rat,
    RatMatrix,
    primitive_vector,
    rat,
    size_of_rational,
)
from pilp.polyhedron import (
    LinearConstraint,
    PartiallyOpenPolyhedron,
    enumerate_bases,
    is_feasible,
)

INFINITE_WIDTH_ERROR = (
    "infinite lattice width: every feasible right-hand side admits integral points"
)


@dataclass(frozen=True)
class WidthTriple:
    """Bounding maps and a direction: c G b <= min c x <= max c x <= c F b."""

    F: RatMatrix  # n x m, upper-bound basic-solution map
    G: RatMatrix  # n x m, lower-bound basic-solution map
    c: tuple[int, ...]  # primitive integral direction

    def __post_init__(self):
        if all(x == 0 for x in self.c):
            raise ValueError("direction must be nonzero")
        if primitive_vector(self.c) != self.c:
            raise ValueError("direction must have coprime components")

    @property
    def width_functional(self) -> tuple:
        """Row vector c (F - G) mapping b to the width along c."""
        cv = [rat(x) for x in self.c]
        m = self.F.ncols
        return tuple(
            sum(
                (cv[i] * (self.F.data[i][j] - self.G.data[i][j])
                 for i in range(len(cv))),
                rat(0),
            )
            for j in range(m)
        )

    def upper_functional(self) -> tuple:
        cv = [rat(x) for x in self.c]
        return tuple(
            sum((cv[i] * self.F.data[i][j] for i in range(len(cv))), rat(0))
            for j in range(self.F.ncols)
        )

    def lower_functional(self) -> tuple:
        cv = [rat(x) for x in self.c]
        return tuple(
            sum((cv[i] * self.G.data[i][j] for i in range(len(cv))), rat(0))
            for j in range(self.G.ncols)
        )


def basic_solution_map(A: RatMatrix, basis: tuple[int, ...]) -> RatMatrix:
    """F_N as an n x m matrix: F_N b = A_N^{-1} b_N."""
    n, m = A.ncols, A.nrows
    inv = A.rows_subset(basis).inverse()
    cols = {basis[k]: [inv.data[i][k] for i in range(n)] for k in range(n)}
    return RatMatrix(
        [[cols[j][i] if j in cols else rat(0) for j in range(m)] for i in range(n)]
    )


def flat_direction_triples(
    A: RatMatrix, config: Config = DEFAULT_CONFIG
) -> list[WidthTriple]:
    """Candidate width-direction triples covering every right-hand side.

    Iterates unordered basis pairs in lexicographic order; equal pairs are
    skipped (their cone intersection is the origin).  Candidates are the
    integer-hull vertex superset of the cut cone, made primitive, then
    deduplicated by (c, F, G) so identical directions with different bounds
    are both kept.  Raises when the parametric width is infinite.
    """
    bases = enumerate_bases(A)
    if not finite_width_test(A, config):
        raise ValueError(INFINITE_WIDTH_ERROR)
    triples: list[WidthTriple] = []
    seen: set = set()
    for i, n1 in enumerate(bases):
        f1 = None
        for n2 in bases[i + 1:]:
            cut = cone_cut_system(A, n1, n2)
            candidates = integer_hull_vertex_superset(
                cut, config.enum_bound, filter_extreme=True
            )
            if not candidates:
                continue
            if f1 is None:
                f1 = basic_solution_map(A, n1)
            f2 = basic_solution_map(A, n2)
            for cand in sorted(candidates):
                c = primitive_vector(cand)
                key = (c, f1.data, f2.data)
                if key in seen:
                    continue
                seen.add(key)
                triples.append(WidthTriple(f1, f2, c))
    return triples


def triple_count_bound(A: RatMatrix) -> int:
    """The a-priori bound 2 m^{2n} (2n+1)^n (24 n^5 phi)^{n-1} on the triple count."""
    m, n = A.nrows, A.ncols
    phi = A.max_column_size()
    return 2 * m ** (2 * n) * (2 * n + 1) ** n * (24 * n**5 * phi) ** (n - 1)


@dataclass(frozen=True)
class WidthRegion:
    region: PartiallyOpenPolyhedron  # subset of parameter space
    triple: WidthTriple


@dataclass(frozen=True)
class WidthPartition:
    regions: tuple[WidthRegion, ...]

    def locate(self, b) -> WidthRegion | None:
        hits = [r for r in self.regions if r.region.contains(b)]
        if not hits:
            return None
        assert len(hits) == 1, "partition regions must be disjoint"
        return hits[0]


def region_rows_for_index(
    functionals: list[tuple], i: int
) -> list[LinearConstraint]:
    """Tie-break rows: strictly better than earlier triples, weakly than later."""
    rows = []
    for j, other in enumerate(functionals):
        if j == i:
            continue
        diff = tuple(x - y for x, y in zip(functionals[i], other))
        rows.append(LinearConstraint(diff, rat(0), strict=j < i))
    return rows


def width_partition(
    A: RatMatrix,
    Q: PartiallyOpenPolyhedron,
    config: Config = DEFAULT_CONFIG,
) -> WidthPartition:
    """Partition Q into regions with a unique exact width direction.

    Requires P_b non-empty for every b in Q (caller guarantees, typically
    via Fourier-Motzkin projection of the system).  Within region i the
    width of P_b equals c_i (F_i - G_i) b exactly.

    The regions are the Theorem-style cells "triple i is the first argmin of
    the width functionals", but each cell is represented by comparisons
    against surviving winners only: at any b the first argmin has a
    non-empty cell, so comparisons with never-winning functionals are
    redundant and the represented sets are identical.
    """
    if Q.dim != A.nrows:
        raise ValueError("Q arity must equal the row count of A")
    triples = flat_direction_triples(A, config)
    functionals = [t.width_functional for t in triples]

    # identical later functionals lose every strict tie-break: empty cells
    first_of: dict[tuple, int] = {}
    unique: list[int] = []
    for idx, f in enumerate(functionals):
        if f not in first_of:
            first_of[f] = idx
            unique.append(idx)

    def comparison_rows(idx: int, against: list[int]) -> list[LinearConstraint]:
        rows = []
        for j in against:
            if j == idx:
                continue
            diff = tuple(
                x - y for x, y in zip(functionals[idx], functionals[j])
            )
            rows.append(LinearConstraint(diff, rat(0), strict=j < idx))
        return rows

    # discovery pass: weak comparisons against winners found so far; an
    # index whose weak cell is already empty can never be a first argmin
    winners: list[int] = []
    for idx in unique:
        weak_rows = [
            LinearConstraint(
                tuple(x - y for x, y in zip(functionals[idx], functionals[j])),
                rat(0),
                False,
            )
            for j in winners
        ]
        poly = Q.with_constraints(weak_rows).deduplicated()
        if is_feasible(poly)[0]:
            winners.append(idx)

    # exact pass with the true strict/weak tie-break pattern
    survivors = []
    for idx in winners:
        poly = Q.with_constraints(comparison_rows(idx, winners)).deduplicated()
        if is_feasible(poly)[0]:
            survivors.append(idx)

    regions = []
    for idx in survivors:
        poly = Q.with_constraints(comparison_rows(idx, survivors)).deduplicated()
        regions.append(WidthRegion(poly, triples[idx]))
    return WidthPartition(tuple(regions))


def evaluate_width_at(
    partition: WidthPartition, b
) -> tuple[Rat, tuple[int, ...]]:
    """Width and direction at a specific right-hand side inside Q."""
    hit = partition.locate(b)
    if hit is None:
        raise ValueError("right-hand side outside the partitioned region")
    from pilp.numkernel import dot

    return dot(hit.triple.width_functional, b), hit.triple.c
