"""PQF-closed sets of the torus fragment.

Cells m*(L \\cap log T), their finite unions, the irreducible sets (single
affine translates), bounded enumeration of the components of log T, loci,
rank and dimension under the generic interpretation, genericity, and
coordinate permutations.

Loci are computed over the constant subspace only (kappa plus the declared
constants); this realizes the paper convention of parameters from the
logarithms of algebraic numbers and is the modeling assumption that makes
rank a rational-dimension computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .cover import CoverPoint, exp_point
from .errors import (
    ArityMismatchError,
    EmptyTorusError,
    EmptyWithinBoundError,
    NotMemberError,
    ReducibleError,
)
from .lattice import IntMatrix, RatMatrix, integer_kernel, rational_left_kernel, rational_rank
from .linear import LinearSet
from .torus import TorusPresentation, components, is_irreducible, linear_of_torus, normal_form


@dataclass(frozen=True)
class IrreducibleSet:
    """An irreducible PQF-closed set: a single affine translate."""

    linear: LinearSet

    @property
    def n(self) -> int:
        return self.linear.n

    def member(self, v: Sequence[CoverPoint]) -> bool:
        return self.linear.member(v)

    def dimension(self) -> int:
        return self.linear.dimension()

    def permute(self, sigma: Sequence[int]) -> "IrreducibleSet":
        return IrreducibleSet(self.linear.permute(sigma))


@dataclass(frozen=True)
class Cell:
    """m * (L \\cap log T): the basic closed set of the fragment."""

    m: int
    L: LinearSet
    T: TorusPresentation

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("cell scale must be positive")
        if self.L.n != self.T.n:
            raise ArityMismatchError("cell linear and torus arities differ")

    @property
    def n(self) -> int:
        return self.L.n

    def member(self, x: Sequence[CoverPoint]) -> bool:
        if len(x) != self.n:
            raise ArityMismatchError("point arity differs from cell arity")
        scaled = tuple(Fraction(1, self.m) * xi for xi in x)
        if not self.L.member(scaled):
            return False
        return self.T.member(tuple(exp_point(v) for v in scaled))

    def permute(self, sigma: Sequence[int]) -> "Cell":
        return Cell(self.m, self.L.permute(sigma), self.T.permute(sigma))


@dataclass(frozen=True)
class PQFSet:
    """A finite union of cells."""

    cells: tuple[Cell, ...]

    def __post_init__(self):
        if self.cells:
            n = self.cells[0].n
            if any(c.n != n for c in self.cells):
                raise ArityMismatchError("cells have mixed arities")

    @property
    def n(self) -> int:
        if not self.cells:
            raise ValueError("empty cell list has no arity")
        return self.cells[0].n

    def member(self, x: Sequence[CoverPoint]) -> bool:
        return any(c.member(x) for c in self.cells)

    def permute(self, sigma: Sequence[int]) -> "PQFSet":
        return PQFSet(tuple(c.permute(sigma) for c in self.cells))


def member(x: Sequence[CoverPoint], S) -> bool:
    """Membership in any of the fragment's set representations."""
    if isinstance(S, (PQFSet, Cell, IrreducibleSet, LinearSet)):
        return S.member(x)
    if isinstance(S, TorusPresentation):
        return S.member(tuple(exp_point(v) for v in x))
    raise TypeError(f"no membership for {type(S).__name__}")


def _canonical_offset(k: Sequence[int], stabilizer: IntMatrix) -> tuple[int, ...]:
    """Reduce a kernel offset modulo the stabilizer lattice (HNF rows)."""
    vec = list(k)
    for row in stabilizer.data:
        pivot = next(i for i, x in enumerate(row) if x != 0)
        q = vec[pivot] // row[pivot]
        if q:
            vec = [a - q * b for a, b in zip(vec, row)]
    return tuple(vec)


def log_components(T: TorusPresentation, bound: int) -> list[IrreducibleSet]:
    """Components of log T within the kernel bound: translates L + k.

    One representative per stabilizer coset (translates by kernel tuples in
    the direction space fix L), enumerated over canonical representatives
    with coordinates in [-bound, bound]. The list is complete for offsets
    within the bound and makes no claim beyond it.
    """
    nf = normal_form(T)
    if not nf.consistent:
        raise EmptyTorusError("empty torus")
    if not is_irreducible(T):
        raise ReducibleError("log components require an irreducible torus")
    L = linear_of_torus(T)
    stabilizer = integer_kernel(nf.lattice) if nf.lattice.nrows else IntMatrix.identity(T.n)
    seen: dict[tuple[int, ...], None] = {}
    for k in itertools.product(range(-bound, bound + 1), repeat=T.n):
        canon = _canonical_offset(k, stabilizer)
        if canon in seen:
            continue
        if any(abs(x) > bound for x in canon):
            continue
        seen[canon] = None
    out = []
    for canon in seen:
        shift = tuple(CoverPoint.kappa(c) for c in canon)
        out.append(IrreducibleSet(L.translate(shift)))
    return out


def _generic_matrix(points: Sequence[CoverPoint]) -> list[list[Fraction]]:
    indices = sorted(
        {i for p in points for i in p.support() if i % 2 == 0 and i != 0}
    )
    return [[p.coeff(i) for i in indices] for p in points]


def locus(a: Sequence[CoverPoint]) -> IrreducibleSet:
    """The smallest PQF-closed set definable over the constants containing a.

    The affine subspace cut out by every rational relation among the
    coordinates whose value lies in the constant subspace, with those exact
    values as right-hand sides.
    """
    n = len(a)
    if n == 0:
        raise ValueError("locus of the empty tuple is undefined")
    gamma = _generic_matrix(a)
    width = len(gamma[0]) if gamma else 0
    relations = rational_left_kernel(RatMatrix(gamma, width))
    constraints = []
    for q in relations.data:
        rhs = CoverPoint.zero()
        for qi, ai in zip(q, a):
            if qi:
                rhs = rhs + qi * ai
        constraints.append((tuple(Fraction(x) for x in q), rhs))
    return IrreducibleSet(LinearSet(n, constraints))


def rank(a: Sequence[CoverPoint], over: Sequence[CoverPoint] = ()) -> int:
    """Rational dimension of span(a, over, constants) over span(over, constants)."""
    base = _generic_matrix(list(over) + list(a))
    lower = base[: len(over)]
    return rational_rank(base) - rational_rank(lower)


SetLike = Union[PQFSet, Cell, IrreducibleSet, LinearSet, TorusPresentation]


def dim_set(S: SetLike, bound: int = 3) -> int:
    """Dimension of a fragment set; unions take the maximum over their
    components enumerated within the kernel bound.

    Raises EmptyWithinBoundError when nothing is found under the bound,
    distinguishing truncation artifacts from established emptiness.
    """
    if isinstance(S, IrreducibleSet):
        return S.linear.dimension()
    if isinstance(S, LinearSet):
        return S.dimension()
    if isinstance(S, TorusPresentation):
        nf = normal_form(S)
        if not nf.consistent:
            raise EmptyWithinBoundError("empty torus")
        return S.n - nf.lattice.nrows
    if isinstance(S, Cell):
        S = PQFSet((S,))
    if isinstance(S, PQFSet):
        best: Optional[int] = None
        for cell in S.cells:
            for piece in _cell_components(cell, bound):
                d = piece.dimension()
                if best is None or d > best:
                    best = d
        if best is None:
            raise EmptyWithinBoundError("no components within the kernel bound")
        return best
    raise TypeError(f"no dimension for {type(S).__name__}")


def _cell_components(cell: Cell, bound: int) -> list[LinearSet]:
    """Nonempty affine pieces (L \\cap (L_c + k)) of a cell within the bound.

    Pieces are returned unscaled; the m* wrapper is a bijection and does not
    change dimension or emptiness.
    """
    nf = normal_form(cell.T)
    if not nf.consistent:
        return []
    pieces = []
    for comp in components(cell.T):
        for translate in log_components(comp, bound):
            meet = cell.L.intersect(translate.linear)
            if meet is not None:
                pieces.append(meet)
    return pieces


def cell_component_sets(cell: Cell, bound: int) -> list[IrreducibleSet]:
    """Scaled irreducible components m*(L \\cap (L_c + k)) within the bound."""
    return [
        IrreducibleSet(piece.scale(cell.m))
        for piece in _cell_components(cell, bound)
    ]


def is_generic(a: Sequence[CoverPoint], S: IrreducibleSet) -> bool:
    """Whether rank(a) over the set's defining constants attains dim(S)."""
    if not S.member(a):
        raise NotMemberError("point does not lie in the set")
    return rank(a) == S.dimension()


def permute(S, sigma: Sequence[int]):
    """Coordinate permutation of any fragment set; membership commutes."""
    return S.permute(sigma)


def permute_point(x: Sequence[CoverPoint], sigma: Sequence[int]) -> tuple[CoverPoint, ...]:
    return tuple(x[sigma[j]] for j in range(len(sigma)))
