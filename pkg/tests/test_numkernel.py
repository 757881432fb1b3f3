"""Tests for exact rationals, HNF, unimodular transforms, reconstruction."""

import random

import pytest

from pilp.numkernel import (
    ColumnNormalization,
    RatMatrix,
    UnimodularMatrix,
    gcd_ext,
    hermite_normal_form,
    normalize_full_column_rank,
    rat,
    rat_str,
    rational_reconstruct,
    size_of_rational,
    unimodular_for_direction,
)


def test_rat_parsing_roundtrip():
    assert rat("2/4") == rat(1, 2)
    assert rat("-3") == rat(-3)
    assert rat_str(rat(6, -4)) == "-3/2"
    assert rat_str(rat(8, 4)) == "2"
    with pytest.raises(TypeError):
        rat(0.5)


def test_rational_size():
    # size(p/q) = 1 + ceil(log2(|p|+1)) + ceil(log2(q+1))
    assert size_of_rational(rat(0)) == 1 + 0 + 1
    assert size_of_rational(rat(1)) == 1 + 1 + 1
    assert size_of_rational(rat(3, 2)) == 1 + 2 + 2


def test_gcd_ext_examples():
    g, u, v = gcd_ext(4, 6)
    assert g == 2 and 4 * u + 6 * v == 2
    assert gcd_ext(0, 5) == (5, 0, 1)
    assert gcd_ext(7, 1) == (1, 0, 1)
    assert gcd_ext(0, 0) == (0, 0, 0)
    g, u, v = gcd_ext(-4, -6)
    assert g == 2 and -4 * u - 6 * v == 2


def check_hnf(A: RatMatrix):
    m, k = A.nrows, A.ncols
    H, U = hermite_normal_form(A)
    AU = A.mat_mul(U.to_rat())
    assert abs(U.det()) == 1
    for i in range(m):
        for j in range(k):
            expected = H.data[i][j] if j < m else rat(0)
            assert AU.data[i][j] == expected
    for i in range(m):
        assert H.data[i][i] > 0
        for j in range(m):
            if j < i:
                assert H.data[i][j] == 0
            elif j > i:
                assert 0 <= H.data[i][j] < H.data[i][i]
    return H, U


def test_hnf_examples():
    H, U = check_hnf(RatMatrix([[4, 6]]))
    assert H.data[0][0] == 2
    H, _ = check_hnf(RatMatrix.identity(3))
    assert H == RatMatrix.identity(3)
    H, _ = check_hnf(RatMatrix([[2, 1]]))
    assert H.data[0][0] == 1


def test_hnf_rejects_rank_deficient():
    with pytest.raises(ValueError):
        hermite_normal_form(RatMatrix([[1, 2], [2, 4]]))
    with pytest.raises(ValueError):
        hermite_normal_form(RatMatrix([[1, 2], [3, 4], [5, 6]]))


def test_hnf_random_200():
    rng = random.Random(20240901)
    done = 0
    while done < 200:
        m = rng.randint(1, 4)
        k = rng.randint(m, 4)
        A = RatMatrix([[rng.randint(-9, 9) for _ in range(k)] for _ in range(m)])
        if A.rank() < m:
            continue
        check_hnf(A)
        done += 1


def test_unimodular_for_direction_examples():
    g, U = unimodular_for_direction([1, 0, 0])
    assert g == 1 and U.row_vec_mul([rat(1), rat(0), rat(0)]) == (1, 0, 0)
    g, U = unimodular_for_direction([4, 6])
    assert g == 2 and U.row_vec_mul([rat(4), rat(6)]) == (2, 0)
    g, U = unimodular_for_direction([0, 0, 3])
    assert g == 3 and U.row_vec_mul([rat(0), rat(0), rat(3)]) == (3, 0, 0)
    with pytest.raises(ValueError):
        unimodular_for_direction([0, 0])


def test_unimodular_direction_gcd_preserved_100():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 4)
        c = [rng.randint(-30, 30) for _ in range(n)]
        if all(x == 0 for x in c):
            c[0] = rng.randint(1, 5)
        g, U = unimodular_for_direction(c)
        image = U.row_vec_mul([rat(x) for x in c])
        gc = 0
        for x in c:
            gc = gcd_ext(gc, x)[0]
        assert image[0] == gc == g
        assert all(x == 0 for x in image[1:])


def test_normalize_full_column_rank():
    A = RatMatrix([[1, 0], [0, 1]])
    res = normalize_full_column_rank(A)
    assert res.dropped == 0 and res.aprime == A

    res = normalize_full_column_rank(RatMatrix([[1, 1], [-1, -1]]))
    assert res.dropped == 1
    assert res.aprime is not None and res.aprime.ncols == 1
    # A U = [A' | 0]
    prod = RatMatrix([[1, 1], [-1, -1]]).mat_mul(res.U.to_rat())
    assert prod.col(1) == (0, 0)

    res = normalize_full_column_rank(RatMatrix([[0, 0], [0, 0]]))
    assert res.aprime is None and res.dropped == 2


def test_normalize_random_rank_identity():
    rng = random.Random(11)
    for _ in range(100):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = RatMatrix(
            [[rat(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
             for _ in range(m)]
        )
        res = normalize_full_column_rank(A)
        prod = A.mat_mul(res.U.to_rat())
        r = res.rank
        assert r == A.rank()
        for i in range(m):
            for j in range(r, n):
                assert prod.data[i][j] == 0
        if res.aprime is not None:
            assert res.aprime.rank() == res.aprime.ncols == r


def test_rational_reconstruct_examples():
    assert rational_reconstruct(rat(6666, 10000), 10) == rat(2, 3)
    assert rational_reconstruct(rat(1, 2), 10) == rat(1, 2)
    assert rational_reconstruct(rat(999, 1000), 1) == rat(1)


def test_rational_reconstruct_identity_on_admissible():
    rng = random.Random(5)
    for _ in range(200):
        D = rng.randint(1, 40)
        q = rng.randint(1, D)
        p = rng.randint(-50, 50)
        x = rat(p, q)
        assert rational_reconstruct(x, D) == x


def test_rational_reconstruct_brute_agreement():
    rng = random.Random(6)
    for _ in range(300):
        D = rng.randint(1, 25)
        x = rat(rng.randint(-150, 150), rng.randint(1, 89))
        got = rational_reconstruct(x, D)
        best = None
        for q in range(1, D + 1):
            base = (x.numerator * q) // x.denominator
            for p in (base - 1, base, base + 1, base + 2):
                cand = rat(p, q)
                key = (abs(x - cand), cand.denominator, cand)
                if best is None or key < best[0]:
                    best = (key, cand)
        assert got == best[1], (x, D)


def test_determinant_bareiss_vs_cofactor():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(1, 4)
        A = RatMatrix(
            [[rat(rng.randint(-5, 5), rng.randint(1, 2)) for _ in range(n)]
             for _ in range(n)]
        )

        def cofactor_det(rows):
            if len(rows) == 1:
                return rows[0][0]
            total = rat(0)
            for j in range(len(rows)):
                minor = [r[:j] + r[j + 1:] for r in rows[1:]]
                term = rows[0][j] * cofactor_det(minor)
                total += term if j % 2 == 0 else -term
            return total

        assert A.determinant() == cofactor_det([list(r) for r in A.data])


def test_unimodular_matrix_validation():
    with pytest.raises(ValueError):
        UnimodularMatrix(((2, 0), (0, 1)))
    U = UnimodularMatrix(((1, 5), (0, -1)))
    V = U.inverse()
    assert U.mat_mul(V).data == UnimodularMatrix.identity(2).data
