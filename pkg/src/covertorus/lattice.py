"""Exact integer and rational linear algebra.

Hermite and Smith normal forms with unimodular transforms, unimodular
completion of primitive vectors, lattice saturation, integer kernels and
rational solving. Everything runs on Python ints and fractions.Fraction;
there is no floating point anywhere. Sizes are desk-scale (the rest of the
package never exceeds ~12x12), so the classical algorithms are used without
modular tricks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, TypeVar

from .errors import NonPrimitiveError


class IntMatrix:
    """Immutable arbitrary-precision integer matrix, row-major.

    Empty matrices (zero rows) must state their column count explicitly so
    that kernels and annihilators of trivial systems keep a well-defined
    ambient arity.
    """

    __slots__ = ("data", "ncols")

    def __init__(self, rows: Sequence[Sequence[int]], ncols: Optional[int] = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols disagrees with row length")
            self.ncols = width
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.ncols = int(ncols)
        self.data = data

    @property
    def nrows(self) -> int:
        return len(self.data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.data[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        return IntMatrix(
            [
                [
                    sum(self.data[i][k] * other.data[k][j] for k in range(self.ncols))
                    for j in range(other.ncols)
                ]
                for i in range(self.nrows)
            ],
            other.ncols,
        )

    def det(self) -> int:
        """Exact determinant via fraction-free Bareiss elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.ncols, self.data))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.data]!r}, ncols={self.ncols})"


class RatMatrix:
    """Immutable exact-rational matrix, row-major."""

    __slots__ = ("data", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: Optional[int] = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            self.ncols = width
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.ncols = int(ncols)
        self.data = data

    @property
    def nrows(self) -> int:
        return len(self.data)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            [[self.data[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.ncols, self.data))

    def __repr__(self) -> str:
        return f"RatMatrix({[list(r) for r in self.data]!r}, ncols={self.ncols})"


@dataclass(frozen=True)
class SnfResult:
    """Smith decomposition U*M*V = D with U, V unimodular and D diagonal.

    Diagonal entries are the elementary divisors: nonnegative and each
    dividing the next.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def divisors(self) -> tuple:
        r = min(self.D.nrows, self.D.ncols)
        return tuple(
            self.D.data[i][i] for i in range(r) if self.D.data[i][i] != 0
        )


def _row_sub(a: list, i: int, j: int, q: int) -> None:
    if q:
        ai, aj = a[i], a[j]
        for c in range(len(ai)):
            ai[c] -= q * aj[c]


def _row_neg(a: list, i: int) -> None:
    a[i] = [-x for x in a[i]]


def _col_sub(a: list, j: int, k: int, q: int) -> None:
    if q:
        for row in a:
            row[j] -= q * row[k]


def _col_swap(a: list, j: int, k: int) -> None:
    for row in a:
        row[j], row[k] = row[k], row[j]


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns (H, U) with U*M = H, U unimodular.

    Convention: pivots positive, entries above each pivot reduced into
    [0, pivot), zero rows at the bottom, pivot columns strictly increasing.
    Pivot selection is deterministic (smallest absolute value, then lowest
    row index), so equal inputs always yield identical outputs.
    """
    m, n = M.nrows, M.ncols
    a = [list(r) for r in M.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r >= m:
            break
        if all(a[i][c] == 0 for i in range(r, m)):
            continue
        while True:
            i0 = min(
                (i for i in range(r, m) if a[i][c] != 0),
                key=lambda i: (abs(a[i][c]), i),
            )
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                u[r], u[i0] = u[i0], u[r]
            if a[r][c] < 0:
                _row_neg(a, r)
                _row_neg(u, r)
            clean = True
            for i in range(r + 1, m):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    _row_sub(a, i, r, q)
                    _row_sub(u, i, r, q)
                    if a[i][c] != 0:
                        clean = False
            if clean:
                break
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                _row_sub(a, i, r, q)
                _row_sub(u, i, r, q)
        r += 1
    return IntMatrix(a, n), IntMatrix(u, m)


def snf(M: IntMatrix) -> SnfResult:
    """Smith normal form with transforms; see SnfResult for the contract."""
    m, n = M.nrows, M.ncols
    a = [list(r) for r in M.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (
                    best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])
                ):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
            u[t], u[bi] = u[bi], u[t]
        if bj != t:
            _col_swap(a, t, bj)
            _col_swap(v, t, bj)
        while True:
            if a[t][t] < 0:
                _row_neg(a, t)
                _row_neg(u, t)
            moved = False
            for i in range(t + 1, m):
                if a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                _row_sub(a, i, t, q)
                _row_sub(u, i, t, q)
                if a[i][t] != 0:
                    # Remainder is a strictly smaller pivot candidate.
                    a[t], a[i] = a[i], a[t]
                    u[t], u[i] = u[i], u[t]
                    moved = True
                    break
            if moved:
                continue
            for j in range(t + 1, n):
                if a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                _col_sub(a, j, t, q)
                _col_sub(v, j, t, q)
                if a[t][j] != 0:
                    _col_swap(a, t, j)
                    _col_swap(v, t, j)
                    moved = True
                    break
            if moved:
                continue
            break
        d = a[t][t]
        bad = next(
            (
                (i, j)
                for i in range(t + 1, m)
                for j in range(t + 1, n)
                if a[i][j] % d != 0
            ),
            None,
        )
        if bad is not None:
            # Pull the offending row up so the next pass shrinks the pivot.
            _row_sub(a, t, bad[0], -1)
            _row_sub(u, t, bad[0], -1)
            continue
        t += 1
    dmat = [[a[i][j] if i == j else 0 for j in range(n)] for i in range(m)]
    return SnfResult(IntMatrix(u, m), IntMatrix(dmat, n), IntMatrix(v, n))


def invert_unimodular(M: IntMatrix) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("inverse of non-square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M.data)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
        scale = a[c][c]
        a[c] = [x / scale for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    inv = [row[n:] for row in a]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return IntMatrix([[int(x) for x in row] for row in inv], n)


def complete_unimodular(row: Sequence[int]) -> IntMatrix:
    """Square integer matrix with first row `row` and determinant +-1.

    Raises NonPrimitiveError unless gcd of the entries is exactly 1.
    """
    entries = [int(x) for x in row]
    n = len(entries)
    g = 0
    for x in entries:
        g = gcd(g, abs(x))
    if g != 1:
        raise NonPrimitiveError(f"row gcd is {g}, expected 1")
    column = IntMatrix([[x] for x in entries], 1)
    h, u = hnf(column)
    # u * row^T = e1, hence row^T is the first column of u^-1 and the
    # transpose of u^-1 has `row` as its first row.
    return invert_unimodular(u).transpose()


def saturate(M: IntMatrix) -> tuple[IntMatrix, int]:
    """Saturation of the row lattice of M.

    Returns (basis, index): HNF basis rows of the saturation (all integer
    vectors with a nonzero multiple in the rational row span) and the group
    index [saturation : lattice], the product of elementary divisors.
    """
    res = snf(M)
    divisors = res.divisors()
    r = len(divisors)
    vinv = invert_unimodular(res.V)
    rows = [vinv.data[i] for i in range(r)]
    basis, _ = hnf(IntMatrix(rows, M.ncols))
    basis = IntMatrix(basis.data[:r], M.ncols)
    index = 1
    for d in divisors:
        index *= d
    return basis, index


def integer_kernel(M: IntMatrix) -> IntMatrix:
    """HNF basis rows of the right kernel {x in Z^n : M x = 0}."""
    res = snf(M)
    r = len(res.divisors())
    n = M.ncols
    cols = [[res.V.data[i][j] for i in range(n)] for j in range(r, n)]
    if not cols:
        return IntMatrix([], n)
    h, _ = hnf(IntMatrix(cols, n))
    return IntMatrix(h.data[: len(cols)], n)


def _primitive(vec: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector."""
    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a matrix of Fractions via Gaussian elimination."""
    work = [list(map(Fraction, r)) for r in rows]
    if not work:
        return 0
    n = len(work[0])
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pr = work[rank]
        for i in range(len(work)):
            if i != rank and work[i][c] != 0:
                f = work[i][c] / pr[c]
                work[i] = [x - f * y for x, y in zip(work[i], pr)]
        rank += 1
    return rank


def rational_kernel(A: RatMatrix) -> IntMatrix:
    """Basis of the right kernel {x in Q^n : A x = 0}.

    Returned as primitive integer rows in HNF for determinism; they span the
    same rational space as any kernel basis.
    """
    m, n = A.nrows, A.ncols
    work = [list(r) for r in A.data]
    pivots: list[int] = []
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        scale = work[rank][c]
        work[rank] = [x / scale for x in work[rank]]
        for i in range(m):
            if i != rank and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    vectors = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -work[r][f]
        vectors.append(_primitive(vec))
    if not vectors:
        return IntMatrix([], n)
    h, _ = hnf(IntMatrix(vectors, n))
    return IntMatrix(h.data[: len(vectors)], n)


def rational_left_kernel(A: RatMatrix) -> IntMatrix:
    """Basis rows of {q : q A = 0}, primitive-integer HNF."""
    return rational_kernel(A.transpose())


T = TypeVar("T")


def linear_solve(
    A: RatMatrix, b: Sequence[T], zero: T
) -> Optional[tuple[list[T], IntMatrix]]:
    """Solve A x = b exactly over any Q-module.

    Entries of `b` (and of the returned particular solution) may be any
    values supporting addition, subtraction and left multiplication by
    Fraction — rationals or cover points alike. Returns (particular, kernel
    basis rows) or None when the system is inconsistent. Free variables are
    set to `zero`, and the kernel basis is HNF-reduced for determinism.
    """
    m, n = A.nrows, A.ncols
    if len(b) != m:
        raise ValueError("right-hand side length mismatch")
    work = [list(r) for r in A.data]
    rhs = list(b)
    pivots: list[int] = []
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        rhs[rank], rhs[piv] = rhs[piv], rhs[rank]
        scale = work[rank][c]
        work[rank] = [x / scale for x in work[rank]]
        rhs[rank] = (Fraction(1) / scale) * rhs[rank]
        for i in range(m):
            if i != rank and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
                rhs[i] = rhs[i] - f * rhs[rank]
        pivots.append(c)
        rank += 1
    for i in range(rank, m):
        if rhs[i] != zero:
            return None
    particular: list[T] = [zero] * n
    for r, p in enumerate(pivots):
        particular[p] = rhs[r]
    kernel = rational_kernel(A)
    return particular, kernel


def integral_preimage_lattice(Q: RatMatrix) -> IntMatrix:
    """HNF basis rows of {a in Z^r : Q a in Z^s} for rational Q (s x r)."""
    s, r = Q.nrows, Q.ncols
    if s == 0:
        return IntMatrix.identity(r)
    denom = 1
    for row in Q.data:
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    N = IntMatrix([[int(x * denom) for x in row] for row in Q.data], r)
    res = snf(N)
    rows = []
    for i in range(r):
        delta = res.D.data[i][i] if i < s else 0
        mult = denom // gcd(delta, denom)
        rows.append([mult * res.V.data[k][i] for k in range(r)])
    h, _ = hnf(IntMatrix(rows, r))
    nz = sum(1 for row in h.data if any(row))
    return IntMatrix(h.data[:nz], r)
