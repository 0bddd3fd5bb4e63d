"""Concrete model of the cover 0 -> Z -> V -> F* -> 1.

V is the space of finitely supported rational vectors over a countable
basis. Index 0 is the kernel generator kappa; odd indices 2i-1 are the
declared constants g_i (logarithms of multiplicatively independent
algebraic numbers); even indices 2i are the generics e_i (logarithms of
algebraically independent transcendentals). F* is modeled as V/Z*kappa,
every element carrying the unique representative whose kappa-coordinate
lies in [0, 1).

Under this interpretation the pregeometry rank of a tuple is its rational
linear dimension modulo the constant subspace, which is what makes the
rank calculus of the later modules computable.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import floor
from typing import Iterable, Mapping, Optional, Sequence

KAPPA_INDEX = 0


def is_constant_index(i: int) -> bool:
    """Kappa and all odd indices span the constant subspace."""
    return i == KAPPA_INDEX or i % 2 == 1


def generic_index(i: int) -> int:
    """Basis index of the generic e_i (i >= 1)."""
    if i < 1:
        raise ValueError("generic indices start at 1")
    return 2 * i


def constant_index(i: int) -> int:
    """Basis index of the declared constant g_i (i >= 1)."""
    if i < 1:
        raise ValueError("constant indices start at 1")
    return 2 * i - 1


class CoverPoint:
    """Finitely supported rational vector in V; immutable and hashable."""

    __slots__ = ("_coords", "_hash")

    def __init__(self, coords: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()):
        acc: dict[int, Fraction] = {}
        items = coords.items() if isinstance(coords, Mapping) else coords
        for i, q in items:
            i = int(i)
            if i < 0:
                raise ValueError("basis indices are non-negative")
            q = Fraction(q)
            if q:
                s = acc.get(i, Fraction(0)) + q
                if s:
                    acc[i] = s
                elif i in acc:
                    del acc[i]
        self._coords = dict(sorted(acc.items()))
        self._hash = hash(tuple(self._coords.items()))

    @classmethod
    def zero(cls) -> "CoverPoint":
        return _ZERO

    @classmethod
    def kappa(cls, q=1) -> "CoverPoint":
        return cls([(KAPPA_INDEX, Fraction(q))])

    @classmethod
    def basis(cls, i: int, q=1) -> "CoverPoint":
        return cls([(i, Fraction(q))])

    @classmethod
    def e(cls, i: int, q=1) -> "CoverPoint":
        return cls([(generic_index(i), Fraction(q))])

    @classmethod
    def g(cls, i: int, q=1) -> "CoverPoint":
        return cls([(constant_index(i), Fraction(q))])

    def items(self):
        return self._coords.items()

    def coeff(self, i: int) -> Fraction:
        return self._coords.get(i, Fraction(0))

    def support(self) -> tuple[int, ...]:
        return tuple(self._coords)

    def is_zero(self) -> bool:
        return not self._coords

    def constant_part(self) -> "CoverPoint":
        return CoverPoint(
            [(i, q) for i, q in self._coords.items() if is_constant_index(i)]
        )

    def generic_part(self) -> "CoverPoint":
        return CoverPoint(
            [(i, q) for i, q in self._coords.items() if not is_constant_index(i)]
        )

    def is_constant(self) -> bool:
        return all(is_constant_index(i) for i in self._coords)

    def __add__(self, other: "CoverPoint") -> "CoverPoint":
        if not isinstance(other, CoverPoint):
            return NotImplemented
        return CoverPoint(list(self._coords.items()) + list(other._coords.items()))

    def __sub__(self, other: "CoverPoint") -> "CoverPoint":
        if not isinstance(other, CoverPoint):
            return NotImplemented
        return CoverPoint(
            list(self._coords.items())
            + [(i, -q) for i, q in other._coords.items()]
        )

    def __neg__(self) -> "CoverPoint":
        return CoverPoint([(i, -q) for i, q in self._coords.items()])

    def __mul__(self, scalar) -> "CoverPoint":
        q = Fraction(scalar)
        return CoverPoint([(i, q * x) for i, x in self._coords.items()])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, CoverPoint) and self._coords == other._coords

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self._coords:
            return "CoverPoint(0)"
        parts = []
        for i, q in self._coords.items():
            if i == KAPPA_INDEX:
                name = "k"
            elif i % 2 == 1:
                name = f"g{(i + 1) // 2}"
            else:
                name = f"e{i // 2}"
            parts.append(f"{q}*{name}" if q != 1 else name)
        return f"CoverPoint({' + '.join(parts)})"


_ZERO = CoverPoint()


class FieldPoint:
    """Element of F* = V/Z*kappa via its canonical representative.

    The representative's kappa-coordinate is normalized into [0, 1), so
    equality of field points is plain equality of representatives.
    """

    __slots__ = ("rep",)

    def __init__(self, v: CoverPoint):
        q = v.coeff(KAPPA_INDEX)
        shift = floor(q)
        self.rep = v - CoverPoint.kappa(shift) if shift else v

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldPoint) and self.rep == other.rep

    def __hash__(self) -> int:
        return hash(("FieldPoint", self.rep))

    def __repr__(self) -> str:
        return f"exp({self.rep!r})"


def exp_point(v: CoverPoint) -> FieldPoint:
    """The covering map; a surjective homomorphism with kernel Z*kappa."""
    return FieldPoint(v)


def field_one() -> FieldPoint:
    return FieldPoint(CoverPoint.zero())


def mul_field(c: FieldPoint, d: FieldPoint) -> FieldPoint:
    return FieldPoint(c.rep + d.rep)


def inv_field(c: FieldPoint) -> FieldPoint:
    return FieldPoint(-c.rep)


def pow_field(c: FieldPoint, z: int) -> FieldPoint:
    return FieldPoint(z * c.rep)


def unity_root(q) -> FieldPoint:
    """exp(q*kappa): the root of unity the CLI writes as u(q)."""
    return FieldPoint(CoverPoint.kappa(Fraction(q)))


def field_roots(c: FieldPoint, m: int) -> list[FieldPoint]:
    """All m distinct m-th roots of c, ordered by torsion offset j = 0..m-1.

    The j-th root is exp((rep(c) + j*kappa)/m); distinctness follows from
    the kappa-coordinates (rep + j)/m being pairwise distinct in [0, 1).
    """
    if m < 1:
        raise ValueError("root order must be positive")
    inv = Fraction(1, m)
    return [
        FieldPoint(inv * (c.rep + CoverPoint.kappa(j))) for j in range(m)
    ]


def is_root_of_unity(c: FieldPoint) -> Optional[int]:
    """Exact multiplicative order, or None when c is not torsion.

    Torsion points are exactly those supported on kappa alone; the order of
    exp(q*kappa) with q in [0,1) is the denominator of q.
    """
    rep = c.rep
    if any(i != KAPPA_INDEX for i in rep.support()):
        return None
    return rep.coeff(KAPPA_INDEX).denominator


def eval_monomial(x: Sequence[FieldPoint], z: Sequence[int]) -> FieldPoint:
    """prod x_i^{z_i} computed additively on representatives."""
    if len(x) != len(z):
        raise ValueError("arity mismatch")
    acc = CoverPoint.zero()
    for xi, zi in zip(x, z):
        if zi:
            acc = acc + zi * xi.rep
    return FieldPoint(acc)


def fresh_generic_indices(points: Iterable[CoverPoint], count: int) -> list[int]:
    """Deterministic fresh even indices exceeding everything in `points`.

    Fresh allocation is monotone in the occupied support, so identical
    inputs always receive identical fresh directions.
    """
    top = 0
    for p in points:
        for i in p.support():
            if i > top:
                top = i
    start = top + 1
    if start % 2:
        start += 1
    return [start + 2 * j for j in range(count)]


class BasisRegistry:
    """Bookkeeping for declared basis indices.

    Index 0 (kappa) is always a constant; declared constants live at odd
    indices and generics at even ones, so the two sets stay disjoint by
    construction. Allocation is monotone and guarded by a lock: concurrent
    allocations yield distinct indices.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.constants: set[int] = {KAPPA_INDEX}
        self.generics: set[int] = set()

    def declare_constant(self, i: Optional[int] = None) -> int:
        with self._lock:
            if i is None:
                i = 1
                while i in self.constants:
                    i += 2
            else:
                if i != KAPPA_INDEX and i % 2 == 0:
                    raise ValueError("constant indices are odd")
            self.constants.add(i)
            return i

    def declare_generic(self, i: Optional[int] = None) -> int:
        with self._lock:
            if i is None:
                i = 2
                while i in self.generics:
                    i += 2
            else:
                if i % 2 or i == 0:
                    raise ValueError("generic indices are even and positive")
            self.generics.add(i)
            return i

    def fresh_generic(self) -> int:
        return self.declare_generic()
