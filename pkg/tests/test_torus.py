from fractions import Fraction

import pytest

from covertorus.cover import (
    CoverPoint,
    exp_point,
    field_one,
    mul_field,
    pow_field,
    unity_root,
)
from covertorus.errors import (
    ArityMismatchError,
    EmptyTorusError,
    ReducibleError,
)
from covertorus.lattice import invert_unimodular
from covertorus.linear import LinearSet
from covertorus.rng import SplitMix64
from covertorus.torus import (
    TorusPresentation,
    apply_monomial_matrix,
    canonical_form,
    components,
    intersect,
    is_empty,
    is_irreducible,
    linear_of_torus,
    minimal_torus,
    mth_roots,
    normal_form,
    power,
    presentation_of,
    torus_of_linear,
    torus_sample_points,
)
from covertorus.verifier import gen_bounded_torus, gen_irreducible_torus

ONE = field_one()
HALF = unity_root(Fraction(1, 2))
G1 = exp_point(CoverPoint.g(1))


def tor(n, *rows):
    return TorusPresentation(n, rows)


class TestNormalForm:
    def test_inconsistent_flagged(self):
        nf = normal_form(tor(1, ((1,), ONE), ((1,), HALF)))
        assert not nf.consistent
        assert is_empty(tor(1, ((1,), ONE), ((1,), HALF)))

    def test_generated_row_identified(self):
        c = G1
        T1 = tor(2, ((1, 1), c))
        T2 = tor(2, ((2, 2), mul_field(c, c)), ((1, 1), c))
        assert normal_form(T1) == normal_form(T2)

    def test_full_torus(self):
        nf = normal_form(TorusPresentation.full(2))
        assert nf.consistent and nf.lattice.nrows == 0

    def test_normal_forms_decide_set_equality(self):
        # same lattice, different constants: different sets
        assert normal_form(tor(1, ((1,), ONE))) != normal_form(tor(1, ((1,), HALF)))

    def test_seeded_equality_vs_membership(self):
        # presentations vs their normal-form presentation agree on samples
        rng = SplitMix64(5)
        for trial in range(30):
            T = gen_bounded_torus(SplitMix64(trial), rng.randint(1, 4), 5)
            P = presentation_of(normal_form(T))
            for x in torus_sample_points(T, [[Fraction(1)], [Fraction(-1, 2)]]):
                assert P.member(x)
            for x in torus_sample_points(P, [[Fraction(1, 3)]]):
                assert T.member(x)


class TestCanonicalForm:
    def test_single_branch_example(self):
        T = tor(2, ((2, 3), G1))
        branches = canonical_form(T)
        assert len(branches) == 1
        b = branches[0]
        assert abs(b.U.det()) == 1
        assert list(b.U.data[0]) == [2, 3]
        assert b.constants == (G1,)

    def test_already_canonical(self):
        T = tor(1, ((1,), G1))
        (b,) = canonical_form(T)
        assert [list(r) for r in b.U.data] == [[1]]
        assert b.constants == (G1,)

    def test_square_roots_of_unity_branches(self):
        branches = canonical_form(tor(1, ((2,), ONE)))
        assert [b.constants for b in branches] == [(ONE,), (HALF,)]

    def test_empty_raises(self):
        with pytest.raises(EmptyTorusError):
            canonical_form(tor(1, ((1,), ONE), ((1,), HALF)))

    def test_round_trip_membership(self):
        T = tor(2, ((2, 2), ONE))
        branches = canonical_form(T)
        assert len(branches) == 2
        for b in branches:
            uinv = invert_unimodular(b.U)
            y = list(b.constants) + [exp_point(CoverPoint.e(9))] * (T.n - len(b.constants))
            x = apply_monomial_matrix(uinv, tuple(y))
            assert T.member(x)


class TestIrreducibilityAndComponents:
    def test_irreducibility_examples(self):
        assert is_irreducible(tor(2, ((1, 1), G1)))
        assert not is_irreducible(tor(1, ((2,), ONE)))
        assert not is_irreducible(tor(2, ((2, 2), ONE)))

    def test_components_sixth_roots(self):
        comps = components(tor(1, ((6,), ONE)))
        values = [dict(c.rows)[(1,)] for c in comps]
        assert values == [unity_root(Fraction(j, 6)) for j in range(6)]

    def test_components_pair(self):
        comps = components(tor(2, ((2, 2), ONE)))
        assert [dict(c.rows)[(1, 1)] for c in comps] == [ONE, HALF]

    def test_components_identity_case(self):
        T = tor(2, ((1, 1), G1))
        assert [normal_form(c) for c in components(T)] == [normal_form(T)]

    def test_component_count_equals_branch_count(self):
        for seed in range(25):
            T = gen_bounded_torus(SplitMix64(seed), 3, 4)
            assert len(components(T)) == len(canonical_form(T))


class TestIntersect:
    def test_examples(self):
        a = tor(2, ((1, 0), G1))
        b = tor(2, ((0, 1), HALF))
        J = intersect(a, b)
        assert normal_form(J).lattice.nrows == 2
        assert is_empty(intersect(tor(1, ((1,), ONE)), tor(1, ((1,), HALF))))
        T = tor(2, ((1, 1), G1))
        assert normal_form(intersect(T, TorusPresentation.full(2))) == normal_form(T)

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatchError):
            intersect(TorusPresentation.full(1), TorusPresentation.full(2))


class TestRootsAndPowers:
    def test_root_examples(self):
        T = tor(1, ((1,), G1))
        roots = mth_roots(T, 3)
        assert len(roots) == 3
        for X in roots:
            assert normal_form(power(X, 3)) == normal_form(T)
        assert mth_roots(TorusPresentation.full(2), 7) == [TorusPresentation.full(2)]
        T = tor(2, ((1, -1), ONE))
        roots = mth_roots(T, 2)
        assert [dict(X.rows)[(1, -1)] for X in roots] == [ONE, HALF]

    def test_roots_require_irreducible(self):
        with pytest.raises(ReducibleError):
            mth_roots(tor(1, ((2,), ONE)), 2)
        with pytest.raises(EmptyTorusError):
            mth_roots(tor(1, ((1,), ONE), ((1,), HALF)), 2)

    def test_power_examples(self):
        T = tor(1, ((1,), G1))
        assert normal_form(power(T, 2)) == normal_form(tor(1, ((1,), mul_field(G1, G1))))
        full = TorusPresentation.full(2)
        assert normal_form(power(full, 3)) == normal_form(full)
        T = tor(2, ((2, 3), G1))
        assert normal_form(power(T, 2)) == normal_form(tor(2, ((2, 3), mul_field(G1, G1))))

    def test_root_count_is_m_to_k(self):
        for seed in range(15):
            T = gen_irreducible_torus(SplitMix64(seed), 3, 4)
            k = normal_form(T).lattice.nrows
            for m in (2, 3):
                assert len(mth_roots(T, m)) == m**k


class TestLinearBridge:
    def test_diagonal(self):
        T = tor(2, ((1, -1), ONE))
        L = linear_of_torus(T)
        assert L.member((CoverPoint.e(1), CoverPoint.e(1)))
        assert normal_form(torus_of_linear(L)) == normal_form(T)

    def test_full_spaces(self):
        assert linear_of_torus(TorusPresentation.full(1)) == LinearSet.full(1)
        assert torus_of_linear(LinearSet.full(3)).rows == ()

    def test_affine_with_kappa(self):
        L = LinearSet(2, [((Fraction(1), Fraction(1)), CoverPoint.kappa(Fraction(1, 2)))])
        assert normal_form(torus_of_linear(L)) == normal_form(tor(2, ((1, 1), HALF)))

    def test_round_trip_generated(self):
        for seed in range(25):
            T = gen_irreducible_torus(SplitMix64(seed), 4, 5)
            L = linear_of_torus(T)
            assert normal_form(torus_of_linear(L)) == normal_form(T)
            for pt in L.spanning_points():
                assert T.member(tuple(exp_point(v) for v in pt))

    def test_reducible_refused(self):
        with pytest.raises(ReducibleError):
            linear_of_torus(tor(1, ((2,), ONE)))


class TestMinimalTorus:
    def test_examples(self):
        diag = (exp_point(CoverPoint.e(1)), exp_point(CoverPoint.e(1)))
        assert normal_form(minimal_torus([diag])) == normal_form(tor(2, ((1, -1), ONE)))
        free = (exp_point(CoverPoint.e(1)), exp_point(CoverPoint.e(2)))
        assert minimal_torus([free]).rows == ()
        assert normal_form(minimal_torus([(HALF,)])) == normal_form(tor(1, ((1,), HALF)))

    def test_torsion_pair_needs_congruence(self):
        M = minimal_torus([(ONE,), (HALF,)])
        assert normal_form(M) == normal_form(tor(1, ((2,), ONE)))

    def test_contains_all_inputs(self):
        pts = [
            (exp_point(CoverPoint.e(1)), exp_point(CoverPoint.e(1, 2) + CoverPoint.g(1))),
            (exp_point(CoverPoint.e(2)), exp_point(CoverPoint.e(2, 2) + CoverPoint.g(1))),
        ]
        M = minimal_torus(pts)
        for p in pts:
            assert M.member(p)
        assert normal_form(M) == normal_form(tor(2, ((-2, 1), G1)))
