"""Exact rational arithmetic and integral linear algebra.

Everything downstream sits on this module: arbitrary-precision rationals
(gmpy2.mpq when available, fractions.Fraction otherwise), exact matrices,
extended Euclid, Hermite normal form with a recorded unimodular transform,
kernel-based column normalization, and best rational approximation under a
denominator bound.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

try:  # gmpy2 is an optional speedup; Fraction is the reference substrate
    from gmpy2 import mpq as _mpq

    Rat = _mpq
    _RAT_TYPES: tuple = (_mpq,)
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

    _RAT_TYPES = (Rat,)

RatLike = Union[int, str, "Rat"]


def rat(value: RatLike = 0, den: int | None = None) -> Rat:
    """Build an exact rational from an int, a "p/q" / "p" string, or a pair."""
    if den is not None:
        return Rat(value, den)
    if isinstance(value, _RAT_TYPES):
        return value
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, d = text.partition("/")
            return Rat(int(num), int(d))
        return Rat(int(text))
    if isinstance(value, float):
        raise TypeError("floating point is banned; pass int, str or Rat")
    return Rat(value)  # ints and int-like (e.g. gmpy2.mpz)


def rat_str(value: Rat) -> str:
    """Serialize as "p/q", or plain "p" for integers (lowest terms)."""
    q = rat(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rfloor(value: Rat) -> int:
    q = rat(value)
    return q.numerator // q.denominator


def rceil(value: Rat) -> int:
    q = rat(value)
    return -((-q.numerator) // q.denominator)


def rfrac(value: Rat) -> Rat:
    """Fractional part in [0, 1)."""
    return rat(value) - rfloor(value)


def is_integral(value: Rat) -> bool:
    return rat(value).denominator == 1


def _ceil_log2(x: int) -> int:
    # ceil(log2(x)) for x >= 1
    return (x - 1).bit_length()


def size_of_rational(value: Rat) -> int:
    """Bit size 1 + ceil(log(|p|+1)) + ceil(log(q+1)) of p/q in lowest terms."""
    q = rat(value)
    return 1 + _ceil_log2(abs(q.numerator) + 1) + _ceil_log2(q.denominator + 1)


def size_of_vector(vec: Sequence[Rat]) -> int:
    return len(vec) + sum(size_of_rational(v) for v in vec)


# ---------------------------------------------------------------------------
# vectors


def dot(u: Sequence[Rat], v: Sequence[Rat]) -> Rat:
    assert len(u) == len(v)
    total = rat(0)
    for a, b in zip(u, v):
        total += a * b
    return total


def vec_add(u: Sequence[Rat], v: Sequence[Rat]) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Rat], v: Sequence[Rat]) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u: Sequence[Rat], s: Rat) -> tuple:
    return tuple(a * s for a in u)


def is_zero_vec(u: Sequence[Rat]) -> bool:
    return all(a == 0 for a in u)


def primitive_vector(c: Sequence[int]) -> tuple[int, ...]:
    """Divide an integral vector by the gcd of its components (0 stays 0)."""
    g = 0
    for x in c:
        g = gcd_int(g, int(x))
    if g == 0:
        return tuple(int(x) for x in c)
    return tuple(int(x) // g for x in c)


def gcd_int(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def gcd_ext(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, u, v) with g = gcd(a, b) >= 0 and u*a + v*b = g."""
    if a == 0 and b == 0:
        return 0, 0, 0
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_u, u = u, old_u - quot * u
        old_v, v = v, old_v - quot * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def lcm_int(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // gcd_int(a, b)


# ---------------------------------------------------------------------------
# matrices


class RatMatrix:
    """Dense exact rational matrix (row-major, immutable after construction)."""

    __slots__ = ("data", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[RatLike]]):
        data = tuple(tuple(rat(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged rows")
        self.data = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def rows_subset(self, indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix([self.data[i] for i in indices])

    def transpose(self) -> "RatMatrix":
        return RatMatrix([self.col(j) for j in range(self.ncols)])

    def mat_mul(self, other: "RatMatrix") -> "RatMatrix":
        assert self.ncols == other.nrows
        cols = [other.col(j) for j in range(other.ncols)]
        return RatMatrix(
            [[dot(row, col) for col in cols] for row in self.data]
        )

    def vec_mul(self, v: Sequence[Rat]) -> tuple:
        """Matrix-vector product A v."""
        assert len(v) == self.ncols
        return tuple(dot(row, v) for row in self.data)

    def is_integral(self) -> bool:
        return all(is_integral(x) for row in self.data for x in row)

    def int_rows(self) -> list[list[int]]:
        assert self.is_integral()
        return [[int(x.numerator) for x in row] for row in self.data]

    def determinant(self) -> Rat:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        n = self.nrows
        # clear denominators row by row; det(A) = det(scaled) / prod(scales)
        scale = rat(1)
        m: list[list[int]] = []
        for row in self.data:
            d = 1
            for x in row:
                d = lcm_int(d, x.denominator)
            scale *= d
            m.append([int(x.numerator) * (d // x.denominator) for x in row])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return rat(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return rat(sign * m[n - 1][n - 1]) / scale

    def inverse(self) -> "RatMatrix":
        """Exact inverse by Gauss-Jordan elimination."""
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = [list(row) + [rat(1) if i == j else rat(0) for j in range(n)]
               for i, row in enumerate(self.data)]
        for k in range(n):
            pivot_row = next((i for i in range(k, n) if aug[i][k] != 0), None)
            if pivot_row is None:
                raise ValueError("singular matrix")
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
            pivot = aug[k][k]
            aug[k] = [x / pivot for x in aug[k]]
            for i in range(n):
                if i != k and aug[i][k] != 0:
                    factor = aug[i][k]
                    aug[i] = [x - factor * y for x, y in zip(aug[i], aug[k])]
        return RatMatrix([row[n:] for row in aug])

    def size(self) -> int:
        """Encoding size m*n + sum of entry sizes."""
        return self.nrows * self.ncols + sum(
            size_of_rational(x) for row in self.data for x in row
        )

    def max_column_size(self) -> int:
        """Largest encoding size of a single column."""
        return max(
            self.nrows + sum(size_of_rational(row[j]) for row in self.data)
            for j in range(self.ncols)
        )

    def rank(self) -> int:
        rows = [list(r) for r in self.data]
        rank = 0
        col = 0
        while rank < len(rows) and col < self.ncols:
            pivot_row = next(
                (i for i in range(rank, len(rows)) if rows[i][col] != 0), None
            )
            if pivot_row is None:
                col += 1
                continue
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
            pivot = rows[rank][col]
            for i in range(rank + 1, len(rows)):
                if rows[i][col] != 0:
                    f = rows[i][col] / pivot
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
            rank += 1
            col += 1
        return rank

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        rows = "; ".join(
            " ".join(rat_str(x) for x in row) for row in self.data
        )
        return f"RatMatrix[{rows}]"


@dataclass(frozen=True)
class UnimodularMatrix:
    """Square integer matrix with |det| = 1."""

    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.data)
        if any(len(row) != n for row in self.data):
            raise ValueError("unimodular matrix must be square")
        if abs(self.det()) != 1:
            raise ValueError("|det| != 1")

    @classmethod
    def identity(cls, n: int) -> "UnimodularMatrix":
        return cls(tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
        ))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> "UnimodularMatrix":
        n = len(cols)
        return cls(tuple(
            tuple(int(cols[j][i]) for j in range(n)) for i in range(n)
        ))

    @property
    def n(self) -> int:
        return len(self.data)

    def det(self) -> int:
        mat = RatMatrix(self.data) if self.data else None
        return int(mat.determinant().numerator) if mat else 1

    def to_rat(self) -> RatMatrix:
        return RatMatrix(self.data)

    def vec_mul(self, v: Sequence[Rat]) -> tuple:
        """U v for a column vector v."""
        return tuple(dot(row, v) for row in self.data)

    def row_vec_mul(self, c: Sequence[Rat]) -> tuple:
        """c U for a row vector c."""
        return tuple(dot(c, self.column(j)) for j in range(self.n))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def inverse(self) -> "UnimodularMatrix":
        inv = self.to_rat().inverse()
        return UnimodularMatrix(tuple(
            tuple(int(x.numerator) for x in row) for row in inv.data
        ))

    def mat_mul(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        prod = self.to_rat().mat_mul(other.to_rat())
        return UnimodularMatrix(tuple(
            tuple(int(x.numerator) for x in row) for row in prod.data
        ))


# ---------------------------------------------------------------------------
# Hermite normal form


def _zero_row_i_on_columns(
    mat: list[list[int]], umat: list[list[int]], i: int, free: list[int]
) -> int | None:
    """Column-reduce row i so a single free column holds gcd of its entries.

    Applies 2x2 unimodular column transforms (entries stay reduced modulo the
    current pivot, Kannan-Bachem style).  Returns the pivot column, or None if
    row i is zero on all free columns.
    """
    nonzero = [j for j in free if mat[i][j] != 0]
    if not nonzero:
        return None
    target = nonzero[0]
    for j in nonzero[1:]:
        a, b = mat[i][target], mat[i][j]
        g, u, v = gcd_ext(a, b)
        p, q = a // g, b // g
        for row in (mat, umat):
            for r in range(len(row)):
                x, y = row[r][target], row[r][j]
                row[r][target] = u * x + v * y
                row[r][j] = p * y - q * x
    return target


def hermite_normal_form(A: RatMatrix) -> tuple[RatMatrix, UnimodularMatrix]:
    """Hermite normal form of an integral matrix of full row rank.

    Returns (H, U) with A U = [H | 0], U unimodular, H square non-negative
    upper-triangular and h_ii > h_ij for every j > i.

    Raises:
        ValueError: if A is not integral or not of full row rank.
    """
    if not A.is_integral():
        raise ValueError("hermite_normal_form requires an integral matrix")
    m, k = A.nrows, A.ncols
    if m > k:
        raise ValueError("not full row rank")
    mat = A.int_rows()
    umat = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    pivots: dict[int, int] = {}
    free = list(range(k))
    # gather pivots bottom-up so the final pivot block is upper-triangular
    for i in range(m - 1, -1, -1):
        pivot = _zero_row_i_on_columns(mat, umat, i, free)
        if pivot is None:
            raise ValueError("not full row rank")
        pivots[i] = pivot
        free.remove(pivot)

    def negate_col(j: int) -> None:
        for row in mat:
            row[j] = -row[j]
        for row in umat:
            row[j] = -row[j]

    def add_col_multiple(dst: int, src: int, factor: int) -> None:
        if factor == 0:
            return
        for row in mat:
            row[dst] += factor * row[src]
        for row in umat:
            row[dst] += factor * row[src]

    for i in range(m):
        if mat[i][pivots[i]] < 0:
            negate_col(pivots[i])
    # Reduce right-of-diagonal entries modulo the row's pivot.  Rows are
    # processed bottom-up: reducing row i pollutes rows above i (their
    # entries in the touched columns change), never rows at or below i.
    for i in range(m - 1, -1, -1):
        p = pivots[i]
        for j in range(i + 1, m):
            entry = mat[i][pivots[j]]
            quot = entry // mat[i][p]  # floor division -> result in [0, pivot)
            add_col_multiple(pivots[j], p, -quot)

    order = [pivots[i] for i in range(m)] + free
    h_rows = [[mat[i][j] for j in order[:m]] for i in range(m)]
    u_cols = [[umat[r][j] for r in range(k)] for j in order]
    H = RatMatrix(h_rows)
    U = UnimodularMatrix.from_columns(u_cols)
    return H, U


def unimodular_for_direction(
    c: Sequence[int],
) -> tuple[int, UnimodularMatrix]:
    """Unimodular U with c U = g e_1, g = gcd of the components of c."""
    if all(x == 0 for x in c):
        raise ValueError("zero vector has no direction")
    H, U = hermite_normal_form(RatMatrix([list(c)]))
    g = int(H.data[0][0].numerator)
    return g, U


@dataclass(frozen=True)
class ColumnNormalization:
    """Result of compressing A to full column rank via A U = [A' | 0].

    ``aprime`` is None exactly when rank(A) = 0 (the "no variables" case:
    the system constrains nothing and feasibility is a sign test on b).
    """

    aprime: RatMatrix | None
    U: UnimodularMatrix
    dropped: int

    @property
    def rank(self) -> int:
        return 0 if self.aprime is None else self.aprime.ncols


def normalize_full_column_rank(A: RatMatrix) -> ColumnNormalization:
    """Unimodular column compression: A U = [A' | 0] with A' of full column rank.

    Integer feasibility of A x <= b is equivalent to that of A' y <= b where y
    collects the leading coordinates of U^{-1} x.
    """
    m, n = A.nrows, A.ncols
    scaled: list[list[int]] = []
    for row in A.data:
        d = 1
        for x in row:
            d = lcm_int(d, x.denominator)
        scaled.append([int(x.numerator) * (d // x.denominator) for x in row])
    umat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    r = 0
    for i in range(m):
        if r == n:
            break
        free = list(range(r, n))
        pivot = _zero_row_i_on_columns(scaled, umat, i, free)
        if pivot is None:
            continue
        if pivot != r:  # swap into leading position
            for row in scaled:
                row[r], row[pivot] = row[pivot], row[r]
            for row in umat:
                row[r], row[pivot] = row[pivot], row[r]
        r += 1

    U = UnimodularMatrix.from_columns(
        [[umat[i][j] for i in range(n)] for j in range(n)]
    )
    if r == 0:
        return ColumnNormalization(None, U, n)
    prod = A.mat_mul(U.to_rat())
    aprime = RatMatrix([row[:r] for row in prod.data])
    return ColumnNormalization(aprime, U, n - r)


# ---------------------------------------------------------------------------
# rational reconstruction


def rational_reconstruct(x: Rat, bound: int) -> Rat:
    """Closest rational p/q with q <= bound; ties go to the smaller denominator."""
    if bound < 1:
        raise ValueError("denominator bound must be >= 1")
    x = rat(x)
    if x.denominator <= bound:
        return x

    # continued-fraction convergents of x
    num, den = int(x.numerator), int(x.denominator)
    h_prev, k_prev = 1, 0
    h_cur, k_cur = None, None
    convergents: list[tuple[int, int]] = []
    a_terms: list[int] = []
    n, d = num, den
    while d != 0:
        a = n // d
        a_terms.append(a)
        if h_cur is None:
            h_cur, k_cur = a, 1
        else:
            h_prev, h_cur = h_cur, a * h_cur + h_prev
            k_prev, k_cur = k_cur, a * k_cur + k_prev
        convergents.append((h_cur, k_cur))
        n, d = d, n - a * d
        if k_cur > bound:
            break

    best: Rat | None = None
    for idx, (h, k) in enumerate(convergents):
        if k <= bound:
            cand = Rat(h, k)
            best = _closer_to(x, best, cand)
        else:
            # best semiconvergent between convergents idx-1 and idx
            if idx >= 1:
                h1, k1 = convergents[idx - 1]
                h0, k0 = convergents[idx - 2] if idx >= 2 else (1, 0)
                t = (bound - k0) // k1
                if t >= 1:
                    cand = Rat(h0 + t * h1, k0 + t * k1)
                    best = _closer_to(x, best, cand)
            break
    assert best is not None
    return best


def _closer_to(x: Rat, current: Rat | None, cand: Rat) -> Rat:
    if current is None:
        return cand
    dc, dn = abs(x - current), abs(x - cand)
    if dn < dc:
        return cand
    if dn == dc and cand.denominator < current.denominator:
        return cand
    if dn == dc and cand.denominator == current.denominator and cand < current:
        return cand
    return current
