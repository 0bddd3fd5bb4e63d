"""Tori as exponent-lattice presentations.

A torus in (F*)^n is cut out by monomial equations prod x_i^{z_i} = c.
Presentations are normalized through the Hermite form of the exponent row
lattice together with the induced constant values, which decides solution
set equality. Canonical forms, irreducibility, components, m-th roots,
powers, and the bridge to linear sets on the cover all live here.

The solvability criterion used throughout: because F* is divisible, a
presentation is consistent exactly when every integer relation among its
rows evaluates to 1 on the constants, and the number of irreducible
components equals the index of the row lattice in its saturation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .cover import CoverPoint, FieldPoint, eval_monomial, exp_point, field_one, field_roots, mul_field, pow_field
from .errors import ArityMismatchError, EmptySetError, EmptyTorusError, ReducibleError
from .lattice import (
    IntMatrix,
    complete_unimodular,
    hnf,
    integer_kernel,
    integral_preimage_lattice,
    invert_unimodular,
    RatMatrix,
    saturate,
    snf,
)
from .linear import LinearSet

Row = tuple[tuple[int, ...], FieldPoint]


class TorusPresentation:
    """A torus given by rows (z, c) meaning prod x_i^{z_i} = c."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence = ()):
        if n < 1:
            raise ValueError("arity must be positive")
        norm: list[Row] = []
        for z, c in rows:
            z = tuple(int(x) for x in z)
            if len(z) != n:
                raise ArityMismatchError("exponent row length differs from arity")
            if not isinstance(c, FieldPoint):
                raise TypeError("torus constants must be FieldPoints")
            norm.append((z, c))
        self.n = n
        self.rows = tuple(norm)

    @classmethod
    def full(cls, n: int) -> "TorusPresentation":
        return cls(n, ())

    def member(self, x: Sequence[FieldPoint]) -> bool:
        if len(x) != self.n:
            raise ArityMismatchError("point arity differs from torus arity")
        return all(eval_monomial(x, z) == c for z, c in self.rows)

    def exponent_matrix(self) -> IntMatrix:
        return IntMatrix([list(z) for z, _ in self.rows], self.n)

    def permute(self, sigma: Sequence[int]) -> "TorusPresentation":
        if sorted(sigma) != list(range(self.n)):
            raise ValueError("not a permutation of the arity")
        return TorusPresentation(
            self.n,
            [(tuple(z[sigma[j]] for j in range(self.n)), c) for z, c in self.rows],
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorusPresentation)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"TorusPresentation(n={self.n}, rows={len(self.rows)})"


@dataclass(frozen=True)
class TorusNormalForm:
    """Decides set equality: equal solution sets iff equal normal forms.

    `lattice` holds the HNF basis of the exponent row lattice and `values`
    the induced constants on those basis rows; `consistent` is False for
    the empty torus, in which case lattice and values are empty.
    """

    n: int
    consistent: bool
    lattice: IntMatrix
    values: tuple[FieldPoint, ...]


@dataclass(frozen=True)
class CanonicalBranch:
    """One branch of the birational canonical form.

    In coordinates y = U (.) x (monomially: y_i = prod_j x_j^{U[i][j]}) the
    branch is {y_i = c_i : 1 <= i <= k} with k = len(constants); U is
    unimodular so the change of coordinates is invertible over Z.
    """

    U: IntMatrix
    constants: tuple[FieldPoint, ...]


def _combine_value(coeffs: Sequence[int], constants: Sequence[FieldPoint]) -> FieldPoint:
    acc = CoverPoint.zero()
    for a, c in zip(coeffs, constants):
        if a:
            acc = acc + a * c.rep
    return exp_point(acc)


def normal_form(T: TorusPresentation) -> TorusNormalForm:
    """Canonical (lattice, values) pair; flags inconsistent presentations.

    Consistency reduces to the integer relations among the rows: the system
    is solvable iff every relation evaluates to 1 on the constants (F* is
    divisible, so homomorphisms off the row lattice always extend).
    """
    M = T.exponent_matrix()
    constants = [c for _, c in T.rows]
    relations = integer_kernel(M.transpose())
    one = field_one()
    for rel in relations.data:
        if _combine_value(rel, constants) != one:
            return TorusNormalForm(T.n, False, IntMatrix([], T.n), ())
    H, U = hnf(M)
    rank = sum(1 for row in H.data if any(row))
    lattice = IntMatrix(H.data[:rank], T.n)
    values = tuple(_combine_value(U.data[i], constants) for i in range(rank))
    return TorusNormalForm(T.n, True, lattice, values)


def presentation_of(nf: TorusNormalForm) -> TorusPresentation:
    if not nf.consistent:
        raise EmptyTorusError("empty torus has no canonical presentation")
    return TorusPresentation(nf.n, tuple(zip(nf.lattice.data, nf.values)))


def is_empty(T: TorusPresentation) -> bool:
    return not normal_form(T).consistent


def set_equal(T1: TorusPresentation, T2: TorusPresentation) -> bool:
    return normal_form(T1) == normal_form(T2)


def intersect(T1: TorusPresentation, T2: TorusPresentation) -> TorusPresentation:
    """Row concatenation, normal-formed; may present the empty torus."""
    if T1.n != T2.n:
        raise ArityMismatchError("tori live in different arities")
    combined = TorusPresentation(T1.n, T1.rows + T2.rows)
    nf = normal_form(combined)
    if not nf.consistent:
        return combined
    return presentation_of(nf)


def is_irreducible(T: TorusPresentation) -> bool:
    """Row-lattice saturation criterion; agrees with the branch count."""
    nf = normal_form(T)
    if not nf.consistent:
        raise EmptyTorusError("empty torus")
    _, index = saturate(nf.lattice)
    return index == 1


def components_iter(T: TorusPresentation):
    """Lazily enumerate irreducible components: one per extension of the
    constants to the saturated lattice, ordered by torsion offsets."""
    nf = normal_form(T)
    if not nf.consistent:
        raise EmptyTorusError("empty torus")
    sat, _ = saturate(nf.lattice)
    r = sat.nrows
    if r == 0:
        yield TorusPresentation(T.n)
        return
    # Express the lattice basis over the saturation basis: h_j = sum A[j][k] s_k.
    A = _express_over(nf.lattice, sat)
    res = snf(A)
    k = nf.lattice.nrows
    u_vals = [_combine_value(res.U.data[i], nf.values) for i in range(k)]
    root_lists = []
    for l in range(r):
        if l < k:
            d = res.D.data[l][l]
            root_lists.append(field_roots(u_vals[l], d))
        else:
            root_lists.append([field_one()])
    for combo in itertools.product(*root_lists):
        w = [
            _combine_value([res.V.data[kk][l] for l in range(r)], combo)
            for kk in range(r)
        ]
        yield TorusPresentation(T.n, tuple(zip(sat.data, w)))


def components(T: TorusPresentation) -> list[TorusPresentation]:
    """All irreducible components; the count equals the saturation index."""
    out = list(components_iter(T))
    _, index = saturate(normal_form(T).lattice)
    assert len(out) == index
    return out


def _express_over(lattice: IntMatrix, basis: IntMatrix) -> IntMatrix:
    """Integer coordinates of lattice rows over basis rows (basis in HNF)."""
    coords = []
    for row in lattice.data:
        vec = list(row)
        cs = []
        for b in basis.data:
            pivot = next(i for i, x in enumerate(b) if x != 0)
            q, rem = divmod(vec[pivot], b[pivot])
            if rem != 0:
                raise ValueError("row not in the basis span")
            cs.append(q)
            vec = [x - q * y for x, y in zip(vec, b)]
        if any(vec):
            raise ValueError("row not in the basis span")
        coords.append(cs)
    return IntMatrix(coords, basis.nrows)


def canonical_form(T: TorusPresentation) -> list[CanonicalBranch]:
    """Birational canonical form: branches {y_i = c_i} with y = U (.) x.

    Eliminates one equation per step: complete the primitive part of the
    leading row to a unimodular matrix, take the d-th roots of its constant
    (d the content of the row), substitute each root into the remaining
    equations and recurse. Roots are enumerated by torsion offset, so the
    output order is deterministic; the branch count equals the saturation
    index, hence exactly one branch for irreducible input.
    """
    nf = normal_form(T)
    if not nf.consistent:
        raise EmptyTorusError("empty torus")
    n = T.n
    branches: list[CanonicalBranch] = []

    def recurse(eqs: list[tuple[list[int], FieldPoint]], t: int, U: IntMatrix,
                consts: list[FieldPoint]) -> None:
        live = [(z, c) for z, c in eqs if any(z) or c != field_one()]
        for z, c in live:
            if not any(z):
                return  # contradictory branch: 1 = c with c != 1
        if not live:
            branches.append(CanonicalBranch(U, tuple(consts)))
            return
        z0, c0 = live[0]
        width = n - t
        d = 0
        for x in z0:
            d = gcd(d, abs(x))
        prim = [x // d for x in z0]
        A = complete_unimodular(prim)
        Ainv = invert_unimodular(A)
        lifted = [
            [1 if (i == j and i < t) else 0 for j in range(n)] for i in range(t)
        ]
        for i in range(width):
            lifted.append(
                [0] * t + [A.data[i][j] for j in range(width)]
            )
        U_new = IntMatrix(lifted, n).mul(U)
        transformed = []
        for z, c in live[1:]:
            w = [
                sum(z[i] * Ainv.data[i][j] for i in range(width))
                for j in range(width)
            ]
            transformed.append((w, c))
        for root in field_roots(c0, d):
            rest = []
            for w, c in transformed:
                newc = mul_field(c, pow_field(root, -w[0]))
                rest.append((w[1:], newc))
            recurse(rest, t + 1, U_new, consts + [root])

    eqs = [(list(z), c) for z, c in zip(nf.lattice.data, nf.values)]
    recurse(eqs, 0, IntMatrix.identity(n), [])
    return branches


def apply_monomial_matrix(M: IntMatrix, x: Sequence[FieldPoint]) -> tuple[FieldPoint, ...]:
    """y with y_i = prod_j x_j^{M[i][j]}."""
    return tuple(eval_monomial(x, M.data[i]) for i in range(M.nrows))


def mth_roots(T: TorusPresentation, m: int) -> list[TorusPresentation]:
    """All m-th roots of an irreducible torus, ordered by torsion offsets.

    With k saturated rows there are exactly m^k roots: one choice of m-th
    root of the constant per basis row.
    """
    if m < 1:
        raise ValueError("root order must be positive")
    nf = normal_form(T)
    if not nf.consistent:
        raise EmptyTorusError("empty torus")
    _, index = saturate(nf.lattice)
    if index != 1:
        raise ReducibleError("m-th roots require an irreducible torus")
    rows = nf.lattice.data
    choice_lists = [field_roots(v, m) for v in nf.values]
    out = []
    for combo in itertools.product(*choice_lists):
        out.append(TorusPresentation(T.n, tuple(zip(rows, combo))))
    return out


def power(T: TorusPresentation, m: int) -> TorusPresentation:
    """The image {x^m : x in T}, computed through the linear bridge."""
    if m < 1:
        raise ValueError("power must be positive")
    L = linear_of_torus(T)
    return torus_of_linear(L.scale(m))


def linear_of_torus(T: TorusPresentation) -> LinearSet:
    """A linear set L with exp(L) = T, for irreducible T.

    Constraints are the saturated exponent rows with the canonical constant
    representatives as right-hand sides; saturation makes the integral
    kappa-shift correction solvable, so exp maps L onto all of T.
    """
    nf = normal_form(T)
    if not nf.consistent:
        raise EmptyTorusError("empty torus")
    _, index = saturate(nf.lattice)
    if index != 1:
        raise ReducibleError("linear bridge requires an irreducible torus")
    constraints = [
        (tuple(Fraction(x) for x in z), v.rep)
        for z, v in zip(nf.lattice.data, nf.values)
    ]
    return LinearSet(T.n, constraints)


def torus_of_linear(L: Optional[LinearSet]) -> TorusPresentation:
    """The torus exp(L): integer annihilator rows of the direction space,
    constants evaluated at any base point."""
    if L is None:
        raise EmptySetError("empty linear set has no exponential image")
    dirs = L.directions()
    ann = integer_kernel(dirs) if dirs.nrows else IntMatrix.identity(L.n)
    base = L.particular()
    rows = []
    for z in ann.data:
        acc = CoverPoint.zero()
        for zi, bi in zip(z, base):
            if zi:
                acc = acc + zi * bi
        rows.append((tuple(z), exp_point(acc)))
    return TorusPresentation(L.n, rows)


def minimal_torus(points: Sequence[Sequence[FieldPoint]]) -> TorusPresentation:
    """Smallest torus over the constant subspace containing every point.

    Rows are the integer vectors z whose monomial evaluates into the
    constant subgroup with one common value across all points: generic
    parts and non-kappa constant disparities impose linear conditions,
    kappa disparities impose integrality conditions.
    """
    if not points:
        raise ValueError("need at least one point")
    n = len(points[0])
    if any(len(p) != n for p in points):
        raise ArityMismatchError("points have mixed arities")
    reps = [[fp.rep for fp in p] for p in points]
    generic_cols: list[list[Fraction]] = [[] for _ in range(n)]
    for rep in reps:
        indices = sorted(
            {i for v in rep for i in v.support() if i % 2 == 0 and i != 0}
        )
        for coord in range(n):
            generic_cols[coord].extend(rep[coord].coeff(i) for i in indices)
    base = reps[0]
    for rep in reps[1:]:
        diff = [v - b for v, b in zip(rep, base)]
        indices = sorted(
            {i for v in diff for i in v.support() if i % 2 == 1}
        )
        for coord in range(n):
            generic_cols[coord].extend(diff[coord].coeff(i) for i in indices)
    width = len(generic_cols[0])
    linear_part = RatMatrix([generic_cols[i] for i in range(n)], width)
    kernel = integer_kernel(_cleared(linear_part).transpose())
    if kernel.nrows == 0:
        return TorusPresentation(n)
    # Integrality of kappa disparities inside the kernel lattice.
    kappa_rows = []
    for rep in reps[1:]:
        diff = [v - b for v, b in zip(rep, base)]
        kappa_rows.append([d.coeff(0) for d in diff])
    if kappa_rows:
        Q = RatMatrix(
            [
                [
                    sum(Fraction(k[i]) * row[i] for i in range(n))
                    for k in kernel.data
                ]
                for row in kappa_rows
            ],
            kernel.nrows,
        )
        coords = integral_preimage_lattice(Q)
        rows = [
            [
                sum(coords.data[j][l] * kernel.data[l][i] for l in range(kernel.nrows))
                for i in range(n)
            ]
            for j in range(coords.nrows)
        ]
        h, _ = hnf(IntMatrix(rows, n))
        nz = sum(1 for row in h.data if any(row))
        lattice = IntMatrix(h.data[:nz], n)
    else:
        lattice = kernel
    out_rows = []
    for z in lattice.data:
        acc = CoverPoint.zero()
        for zi, bi in zip(z, base):
            if zi:
                acc = acc + zi * bi
        out_rows.append((tuple(z), exp_point(acc)))
    return TorusPresentation(n, out_rows)


def _cleared(A: RatMatrix) -> IntMatrix:
    """Integer matrix with the same left kernel (common-denominator clear)."""
    rows = []
    for _ in range(A.nrows):
        rows.append([])
    for j in range(A.ncols):
        denom = 1
        for i in range(A.nrows):
            d = A.data[i][j].denominator
            denom = denom * d // gcd(denom, d)
        for i in range(A.nrows):
            rows[i].append(int(A.data[i][j] * denom))
    return IntMatrix(rows, A.ncols)


def torus_sample_points(
    T: TorusPresentation, coefficients: Sequence[Sequence[Fraction]]
) -> list[tuple[FieldPoint, ...]]:
    """Deterministic solution samples of a consistent torus.

    Each coefficient row supplies rational weights for the direction basis
    of one component's linear preimage; components are cycled in order.
    Nonzero weights ride on fresh generic directions, so distinct samples
    are genuinely spread across the component.
    """
    from .cover import fresh_generic_indices

    wanted = len(coefficients)
    comps = list(itertools.islice(components_iter(T), wanted or 1))
    bridges = {}
    out = []
    for idx, weights in enumerate(coefficients):
        pick = idx % len(comps)
        if pick not in bridges:
            comp = comps[pick]
            L = linear_of_torus(comp)
            dirs = L.directions()
            fresh = fresh_generic_indices([c.rep for _, c in comp.rows], dirs.nrows)
            bridges[pick] = (L.particular(), dirs, fresh)
        base, dirs, fresh = bridges[pick]
        point = list(base)
        for j, d in enumerate(dirs.data):
            w = weights[j % len(weights)] if weights else Fraction(0)
            if w:
                probe = CoverPoint.basis(fresh[j]) * w
                for i in range(T.n):
                    if d[i]:
                        point[i] = point[i] + d[i] * probe
        out.append(tuple(exp_point(v) for v in point))
    return out
