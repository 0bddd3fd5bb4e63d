from fractions import Fraction

import pytest

from covertorus.cover import CoverPoint, exp_point, field_one, unity_root
from covertorus.errors import (
    EmptySetError,
    EmptyWithinBoundError,
    NotMemberError,
    ReducibleError,
)
from covertorus.geometry import (
    Cell,
    IrreducibleSet,
    PQFSet,
    cell_component_sets,
    dim_set,
    is_generic,
    locus,
    log_components,
    member,
    permute,
    permute_point,
    rank,
)
from covertorus.linear import LinearSet
from covertorus.rng import SplitMix64
from covertorus.torus import TorusPresentation, torus_of_linear
from covertorus.verifier import gen_irreducible_torus, gen_tuple

E = CoverPoint.e
K = CoverPoint.kappa
ZERO = CoverPoint.zero()
ONE = field_one()


def diag(n=2):
    row = [Fraction(0)] * n
    row[0], row[1] = Fraction(1), Fraction(-1)
    return LinearSet(n, [(tuple(row), ZERO)])


class TestLinearSet:
    def test_canonical_equality(self):
        a = LinearSet(2, [((Fraction(2), Fraction(-2)), ZERO)])
        assert a == diag()
        b = LinearSet(
            2,
            [
                ((Fraction(1), Fraction(-1)), ZERO),
                ((Fraction(2), Fraction(-2)), ZERO),
            ],
        )
        assert b == diag()

    def test_empty_rejected(self):
        with pytest.raises(EmptySetError):
            LinearSet(1, [((Fraction(0),), K(1))])
        assert LinearSet.try_from(1, [((Fraction(0),), K(1))]) is None

    def test_translate_scale(self):
        d = diag()
        t = d.translate((ZERO, K(1)))
        assert t.member((E(1), E(1) + K(1)))
        assert not t.member((E(1), E(1)))
        s = d.scale(Fraction(3))
        assert s == d  # rhs zero: scaling fixes the set
        line = LinearSet(1, [((Fraction(1),), K(1))])
        assert line.scale(Fraction(1, 2)).member((K(Fraction(1, 2)),))

    def test_spanning_points_span(self):
        d = diag(3)
        pts = d.spanning_points()
        assert all(d.member(p) for p in pts)
        assert len(pts) == d.dimension() + 1
        assert d.contains_set(d)
        sub = LinearSet.single_point(d.particular())
        assert d.contains_set(sub)
        assert not sub.contains_set(d)


class TestMembership:
    def test_cell_examples(self):
        cell = Cell(1, diag(), TorusPresentation.full(2))
        S = PQFSet((cell,))
        assert member((K(1), K(1)), S)
        assert not member((ZERO, K(1)), S)
        c2 = Cell(2, LinearSet.full(1), TorusPresentation(1, [((1,), exp_point(E(1)))]))
        assert member((E(1, 2),), c2)
        assert not member((E(2, 2),), c2)


class TestLogComponents:
    def test_point_torus(self):
        comps = log_components(TorusPresentation(1, [((1,), ONE)]), 2)
        offsets = sorted(c.linear.particular()[0].coeff(0) for c in comps)
        assert offsets == [-2, -1, 0, 1, 2]

    def test_diagonal_stabilizer(self):
        comps = log_components(TorusPresentation(2, [((1, -1), ONE)]), 1)
        assert len(comps) == 3
        for c in comps:
            assert c.dimension() == 1

    def test_full_torus_single(self):
        comps = log_components(TorusPresentation.full(2), 4)
        assert len(comps) == 1 and comps[0].linear == LinearSet.full(2)

    def test_pairwise_disjoint_and_exp_onto(self):
        T = TorusPresentation(2, [((2, 3), exp_point(CoverPoint.g(1)))])
        comps = log_components(T, 2)
        from covertorus.torus import normal_form

        for i, a in enumerate(comps):
            assert normal_form(torus_of_linear(a.linear)) == normal_form(T)
            for j, b in enumerate(comps):
                if i < j:
                    assert a.linear.intersect(b.linear) is None

    def test_reducible_refused(self):
        with pytest.raises(ReducibleError):
            log_components(TorusPresentation(1, [((2,), ONE)]), 1)


class TestLocusRank:
    def test_examples(self):
        assert locus((E(1),)).linear == LinearSet.full(1)
        pt = locus((K(Fraction(1, 2)),))
        assert pt.dimension() == 0 and pt.member((K(Fraction(1, 2)),))
        line = locus((E(1), E(1) + K(Fraction(1, 3))))
        assert line.dimension() == 1
        assert line.member((E(5), E(5) + K(Fraction(1, 3))))

    def test_rank_examples(self):
        assert rank((E(1), E(2))) == 2
        assert rank((E(1), E(1, 2) + K(1))) == 1
        assert rank((E(1),), over=(E(1),)) == 0
        assert rank((E(1),), over=(CoverPoint.g(1),)) == 1

    def test_locus_contains_and_minimal_vs_cells(self):
        rng = SplitMix64(11)
        for _ in range(40):
            a = gen_tuple(rng, rng.randint(1, 3))
            C = locus(a)
            assert C.member(a)
            assert is_generic(a, C)

    def test_membership_decides_constant_translates(self):
        a = (E(1), E(1))
        C = locus(a)
        assert not C.member((E(1), E(1) + K(1)))


class TestDim:
    def test_examples(self):
        assert dim_set(IrreducibleSet(diag())) == 1
        T = TorusPresentation(2, [((2, 3), exp_point(CoverPoint.g(1)))])
        assert dim_set(T) == 1
        cell = Cell(1, diag(), TorusPresentation.full(2))
        point_cell = Cell(
            1, LinearSet.single_point((ZERO, K(1))), TorusPresentation.full(2)
        )
        assert dim_set(PQFSet((cell, point_cell)), 2) == 1

    def test_empty_within_bound(self):
        # cell whose linear part misses every bounded translate
        T = TorusPresentation(1, [((1,), ONE)])  # log T = Z*kappa
        off = LinearSet.single_point((E(1),))
        with pytest.raises(EmptyWithinBoundError):
            dim_set(PQFSet((Cell(1, off, T),)), 2)
        with pytest.raises(EmptyWithinBoundError):
            dim_set(TorusPresentation(1, [((1,), ONE), ((1,), unity_root(Fraction(1, 2)))]))

    def test_cell_components_scaled(self):
        T = TorusPresentation(1, [((2,), ONE)])
        cell = Cell(2, LinearSet.full(1), T)
        comps = cell_component_sets(cell, 1)
        assert comps and all(c.dimension() == 0 for c in comps)
        for c in comps:
            pt = c.linear.particular()
            assert member(pt, cell)


class TestGenericity:
    def test_examples(self):
        d = IrreducibleSet(diag())
        assert is_generic((E(1), E(1)), d)
        assert not is_generic((K(1), K(1)), d)
        line = IrreducibleSet(
            LinearSet(2, [((Fraction(-1), Fraction(1)), K(Fraction(1, 3)))])
        )
        assert is_generic((E(1), E(1) + K(Fraction(1, 3))), line)
        with pytest.raises(NotMemberError):
            is_generic((E(1), E(2)), d)


class TestPermute:
    def test_examples(self):
        d = IrreducibleSet(diag())
        ident = permute(d, (0, 1))
        assert ident.linear == d.linear
        swapped = permute(d, (1, 0))
        assert swapped.linear == d.linear  # diagonal is symmetric
        line = IrreducibleSet(
            LinearSet(2, [((Fraction(-1), Fraction(1)), K(Fraction(1, 3)))])
        )
        sw = permute(line, (1, 0))
        assert sw.member((E(1) + K(Fraction(1, 3)), E(1)))

    def test_locus_commutes(self):
        rng = SplitMix64(3)
        for _ in range(20):
            n = rng.randint(2, 4)
            a = gen_tuple(rng, n)
            sigma = list(range(n))
            for i in range(n - 1, 0, -1):
                j = rng.randint(0, i)
                sigma[i], sigma[j] = sigma[j], sigma[i]
            sigma = tuple(sigma)
            assert locus(permute_point(a, sigma)).linear == locus(a).linear.permute(sigma)

    def test_membership_commutes_on_cells(self):
        d = Cell(2, diag(), TorusPresentation(2, [((1, -1), ONE)]))
        S = PQFSet((d,))
        x = (E(1, 2), E(1, 2))
        assert member(x, S)
        assert member(permute_point(x, (1, 0)), permute(S, (1, 0)))
