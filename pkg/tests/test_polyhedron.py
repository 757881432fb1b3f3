"""Tests for partially open polyhedra: feasibility, LP, FM elimination."""

import random

import pytest

from pilp.numkernel import RatMatrix, dot, rat
from pilp.polyhedron import (
    LinearConstraint,
    PartiallyOpenPolyhedron,
    affine_image,
    enumerate_bases,
    fm_eliminate,
    is_feasible,
    lp_optimize,
    remove_redundant,
    scale,
    translate,
)

UNIT_SQUARE = PartiallyOpenPolyhedron.from_rows(
    2,
    [((1, 0), 1, False), ((-1, 0), 0, False),
     ((0, 1), 1, False), ((0, -1), 0, False)],
)


def poly_1d(rows):
    return PartiallyOpenPolyhedron.from_rows(1, rows)


def random_poly(rng, n, m, lo=-5, hi=5):
    rows = []
    for _ in range(m):
        a = [rng.randint(lo, hi) for _ in range(n)]
        rows.append((a, rng.randint(lo, hi), rng.random() < 0.3))
    return PartiallyOpenPolyhedron.from_rows(n, rows)


def test_constant_rows_resolved():
    p = PartiallyOpenPolyhedron.from_rows(1, [((0,), 3, False), ((1,), 1, False)])
    assert len(p.constraints) == 1  # 0 <= 3 dropped
    q = PartiallyOpenPolyhedron.from_rows(1, [((0,), -1, False)])
    assert not is_feasible(q)[0]
    assert not q.contains((rat(0),))


def test_is_feasible_examples():
    ok, witness = is_feasible(poly_1d([((1,), 1, False), ((-1,), 0, False)]))
    assert ok and witness is not None
    assert not is_feasible(poly_1d([((1,), 0, True), ((-1,), 0, True)]))[0]
    assert not is_feasible(poly_1d([((1,), 1, True), ((-1,), -1, False)]))[0]


def test_lp_optimize_examples():
    out = lp_optimize(UNIT_SQUARE, [rat(1), rat(0)])
    assert out.status == "finite" and out.value == 1 and out.attained

    out = lp_optimize(poly_1d([((1,), 1, True)]), [rat(1)])
    assert out.status == "finite" and out.value == 1 and not out.attained

    out = lp_optimize(poly_1d([((-1,), 0, False)]), [rat(1)])
    assert out.status == "unbounded"

    out = lp_optimize(poly_1d([((1,), -1, False), ((-1,), 0, False)]), [rat(1)])
    assert out.status == "infeasible"

    out = lp_optimize(UNIT_SQUARE, [rat(1), rat(1)], sense="min")
    assert out.value == 0 and out.attained


def test_fm_examples():
    tri = PartiallyOpenPolyhedron.from_rows(
        2, [((1, 1), 1, False), ((-1, 0), 0, False), ((0, -1), 0, False)]
    )
    proj = fm_eliminate(tri, 1)
    keys = sorted(c.canonical() for c in proj.constraints)
    assert keys == [((-1,), 0, False), ((1,), 1, False)]

    strict = PartiallyOpenPolyhedron.from_rows(
        2, [((0, 1), 1, True), ((1, -1), 0, False)]
    )
    proj = fm_eliminate(strict, 1)
    assert [c.canonical() for c in proj.constraints] == [((1,), 1, True)]

    untouched = PartiallyOpenPolyhedron.from_rows(2, [((1, 0), 1, False)])
    proj = fm_eliminate(untouched, 1)
    assert proj.dim == 1
    assert [c.canonical() for c in proj.constraints] == [((1,), 1, False)]


def substitute_all_but(poly, point_rest, k):
    """1-D system in variable k after fixing the other coordinates."""
    rows = []
    for c in poly.constraints:
        rest = [c.a[j] for j in range(poly.dim) if j != k]
        beta = c.beta - dot(rest, point_rest)
        rows.append(LinearConstraint((c.a[k],), beta, c.strict))
    return PartiallyOpenPolyhedron(1, rows)


def test_fm_soundness_200_random():
    rng = random.Random(314)
    checked = 0
    while checked < 200:
        n = rng.randint(2, 4)
        m = rng.randint(1, 8)
        poly = random_poly(rng, n, m)
        k = rng.randrange(n)
        proj = fm_eliminate(poly, k)
        y = tuple(rat(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(n - 1))
        lifted_ok = is_feasible(substitute_all_but(poly, y, k))[0]
        assert proj.contains(y) == lifted_ok
        checked += 1


def vertex_optimum(poly, objective):
    """Brute-force LP over a closed pointed polyhedron via basic solutions."""
    A = RatMatrix([list(c.a) for c in poly.constraints])
    b = [c.beta for c in poly.constraints]
    best = None
    for basis in enumerate_bases(A):
        sub = A.rows_subset(basis)
        rhs = [b[i] for i in basis]
        vertex = sub.inverse().vec_mul(rhs)
        if poly.contains(vertex):
            val = dot(objective, vertex)
            if best is None or val > best:
                best = val
    return best


def test_lp_agrees_with_vertex_enumeration():
    rng = random.Random(99)
    done = 0
    while done < 60:
        n = rng.randint(1, 3)
        m = rng.randint(1, 5)
        rows = [
            ([rng.randint(-5, 5) for _ in range(n)], rng.randint(-5, 5), False)
            for _ in range(m)
        ]
        # bounding box keeps the polyhedron pointed and bounded
        for i in range(n):
            e = [0] * n
            e[i] = 1
            rows.append((e[:], 10, False))
            rows.append(([-x for x in e], 10, False))
        poly = PartiallyOpenPolyhedron.from_rows(n, rows)
        feasible, _ = is_feasible(poly)
        objective = [rat(rng.randint(-4, 4)) for _ in range(n)]
        out = lp_optimize(poly, objective)
        if not feasible:
            assert out.status == "infeasible"
            continue
        brute = vertex_optimum(poly, objective)
        assert out.status == "finite" and out.attained
        assert out.value == brute
        done += 1


def test_feasibility_consistent_with_lp_status():
    rng = random.Random(123)
    for _ in range(80):
        poly = random_poly(rng, rng.randint(1, 3), rng.randint(1, 6))
        feasible, witness = is_feasible(poly)
        out = lp_optimize(poly, [rat(0)] * poly.dim)
        assert feasible == (out.status != "infeasible")
        if feasible:
            assert poly.contains(witness)


def test_enumerate_bases_examples():
    assert enumerate_bases(RatMatrix([[1], [-1]])) == [(0,), (1,)]
    box = RatMatrix([[1, 0], [-1, 0], [0, 1], [0, -1]])
    assert enumerate_bases(box) == [(0, 2), (0, 3), (1, 2), (1, 3)]
    assert enumerate_bases(RatMatrix.identity(2)) == [(0, 1)]
    with pytest.raises(ValueError):
        enumerate_bases(RatMatrix([[1, 1], [2, 2]]))


def test_affine_ops():
    moved = translate(UNIT_SQUARE, [rat(1), rat(1)])
    assert moved.contains((rat(2), rat(2))) and not moved.contains((rat(0), rat(0)))
    halved = scale(UNIT_SQUARE, rat(1, 2))
    assert halved.contains((rat(1, 2), rat(1, 2)))
    assert not halved.contains((rat(1), rat(0)))
    assert scale(UNIT_SQUARE, rat(1)) == UNIT_SQUARE
    img = affine_image(UNIT_SQUARE, [rat(1), rat(1)], rat(1, 2))
    assert img.contains((rat(5, 4), rat(5, 4)))
    with pytest.raises(ValueError):
        scale(poly_1d([((-1,), 0, False)]), rat(0))
    collapsed = scale(UNIT_SQUARE, rat(0))
    assert collapsed.contains((rat(0), rat(0)))
    assert not collapsed.contains((rat(0), rat(1, 2)))


def test_remove_redundant_keeps_semantics():
    rng = random.Random(4)
    for _ in range(40):
        poly = random_poly(rng, 2, rng.randint(2, 7))
        slim = remove_redundant(poly)
        assert len(slim.constraints) <= len(poly.constraints)
        for _ in range(25):
            pt = (rat(rng.randint(-6, 6), rng.randint(1, 3)),
                  rat(rng.randint(-6, 6), rng.randint(1, 3)))
            assert poly.contains(pt) == slim.contains(pt)


def test_json_round_trip():
    obj = UNIT_SQUARE.to_json_dict()
    back = PartiallyOpenPolyhedron.from_json_dict(obj)
    assert back == UNIT_SQUARE
