"""Affine subspaces of V^n ("linear sets").

A LinearSet is presented by rational constraint rows with CoverPoint
right-hand sides and kept in a canonical fully reduced form: rows in
reduced row echelon shape ordered by pivot column, pivot coefficient 1.
Two presentations of the same affine subspace therefore compare equal, and
inconsistent systems are rejected at construction (EmptySetError), so every
LinearSet instance is nonempty.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .cover import CoverPoint, fresh_generic_indices
from .errors import ArityMismatchError, EmptySetError
from .lattice import IntMatrix, RatMatrix, rational_kernel

Constraint = tuple[tuple[Fraction, ...], CoverPoint]


def _reduce(n: int, constraints) -> Optional[tuple[Constraint, ...]]:
    """Canonical RREF of an augmented system; None when inconsistent."""
    rows = [[Fraction(x) for x in q] for q, _ in constraints]
    rhs = [r for _, r in constraints]
    for row in rows:
        if len(row) != n:
            raise ArityMismatchError("constraint row length differs from arity")
    rank = 0
    pivots: list[int] = []
    for c in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        rhs[rank], rhs[piv] = rhs[piv], rhs[rank]
        scale = rows[rank][c]
        rows[rank] = [x / scale for x in rows[rank]]
        rhs[rank] = (Fraction(1) / scale) * rhs[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
                rhs[i] = rhs[i] - f * rhs[rank]
        pivots.append(c)
        rank += 1
    for i in range(rank, len(rows)):
        if not rhs[i].is_zero():
            return None
    return tuple((tuple(rows[i]), rhs[i]) for i in range(rank))


class LinearSet:
    """Nonempty affine subspace of V^n in canonical reduced presentation."""

    __slots__ = ("n", "constraints")

    def __init__(self, n: int, constraints: Sequence = ()):
        if n < 1:
            raise ValueError("arity must be positive")
        reduced = _reduce(n, constraints)
        if reduced is None:
            raise EmptySetError("inconsistent linear constraints")
        self.n = n
        self.constraints = reduced

    @classmethod
    def try_from(cls, n: int, constraints: Sequence) -> Optional["LinearSet"]:
        try:
            return cls(n, constraints)
        except EmptySetError:
            return None

    @classmethod
    def full(cls, n: int) -> "LinearSet":
        return cls(n, ())

    @classmethod
    def single_point(cls, v: Sequence[CoverPoint]) -> "LinearSet":
        n = len(v)
        rows = []
        for i, value in enumerate(v):
            q = [Fraction(0)] * n
            q[i] = Fraction(1)
            rows.append((tuple(q), value))
        return cls(n, rows)

    # -- queries ---------------------------------------------------------

    def member(self, v: Sequence[CoverPoint]) -> bool:
        if len(v) != self.n:
            raise ArityMismatchError("point arity differs from set arity")
        zero = CoverPoint.zero()
        for q, rhs in self.constraints:
            acc = zero
            for qi, vi in zip(q, v):
                if qi:
                    acc = acc + qi * vi
            if acc != rhs:
                return False
        return True

    def dimension(self) -> int:
        return self.n - len(self.constraints)

    def coefficient_matrix(self) -> RatMatrix:
        return RatMatrix([list(q) for q, _ in self.constraints], self.n)

    def directions(self) -> IntMatrix:
        """Primitive-integer HNF basis rows of the direction space."""
        return rational_kernel(self.coefficient_matrix())

    def particular(self) -> tuple[CoverPoint, ...]:
        """The canonical solution: free coordinates zero."""
        point = [CoverPoint.zero()] * self.n
        for q, rhs in self.constraints:
            pivot = next(i for i, x in enumerate(q) if x != 0)
            point[pivot] = rhs
        return tuple(point)

    # -- constructions ---------------------------------------------------

    def with_constraint(self, q: Sequence, rhs: CoverPoint) -> Optional["LinearSet"]:
        return LinearSet.try_from(
            self.n, list(self.constraints) + [(tuple(map(Fraction, q)), rhs)]
        )

    def intersect(self, other: "LinearSet") -> Optional["LinearSet"]:
        if self.n != other.n:
            raise ArityMismatchError("arity mismatch in intersection")
        return LinearSet.try_from(
            self.n, list(self.constraints) + list(other.constraints)
        )

    def translate(self, k: Sequence[CoverPoint]) -> "LinearSet":
        """The translate {v + k : v in self}."""
        if len(k) != self.n:
            raise ArityMismatchError("translation arity mismatch")
        moved = []
        for q, rhs in self.constraints:
            shift = CoverPoint.zero()
            for qi, ki in zip(q, k):
                if qi:
                    shift = shift + qi * ki
            moved.append((q, rhs + shift))
        return LinearSet(self.n, moved)

    def scale(self, factor) -> "LinearSet":
        """The image {factor * v : v in self} for a nonzero rational."""
        f = Fraction(factor)
        if f == 0:
            raise ValueError("scale factor must be nonzero")
        return LinearSet(self.n, [(q, f * rhs) for q, rhs in self.constraints])

    def permute(self, sigma: Sequence[int]) -> "LinearSet":
        """Image under the coordinate permutation w_j = v_{sigma[j]}."""
        if sorted(sigma) != list(range(self.n)):
            raise ValueError("not a permutation of the arity")
        moved = [
            (tuple(q[sigma[j]] for j in range(self.n)), rhs)
            for q, rhs in self.constraints
        ]
        return LinearSet(self.n, moved)

    def contains_set(self, other: "LinearSet") -> bool:
        """Exact affine containment: other's affine hull lies in self."""
        if self.n != other.n:
            raise ArityMismatchError("arity mismatch")
        for point in other.spanning_points():
            if not self.member(point):
                return False
        return True

    def generic_point(self, fresh: Sequence[int]) -> tuple[CoverPoint, ...]:
        """A generic solution: particular plus fresh generic directions.

        `fresh` supplies one unused even basis index per direction; the
        result has rank equal to dim(self) over the set's own constants.
        """
        dirs = self.directions()
        if len(fresh) < dirs.nrows:
            raise ValueError("not enough fresh indices")
        point = list(self.particular())
        for d, idx in zip(dirs.data, fresh):
            gen = CoverPoint.basis(idx)
            for i in range(self.n):
                if d[i]:
                    point[i] = point[i] + d[i] * gen
        return tuple(point)

    def spanning_points(self) -> list[tuple[CoverPoint, ...]]:
        """Points whose affine hull is exactly this set.

        The particular solution plus one fresh-generic displacement per
        direction; fresh indices are chosen beyond the set's own support.
        """
        used = [rhs for _, rhs in self.constraints]
        dirs = self.directions()
        fresh = fresh_generic_indices(used, dirs.nrows)
        pts = [self.particular()]
        base = self.particular()
        for d, idx in zip(dirs.data, fresh):
            gen = CoverPoint.basis(idx)
            moved = list(base)
            for i in range(self.n):
                if d[i]:
                    moved[i] = moved[i] + d[i] * gen
            pts.append(tuple(moved))
        return pts

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearSet)
            and self.n == other.n
            and self.constraints == other.constraints
        )

    def __hash__(self) -> int:
        return hash((self.n, self.constraints))

    def __repr__(self) -> str:
        return f"LinearSet(n={self.n}, {len(self.constraints)} constraints)"
