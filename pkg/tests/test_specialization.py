from fractions import Fraction

import pytest

from covertorus.cover import CoverPoint
from covertorus.errors import (
    LengthMismatchError,
    NotSpecializationError,
    PreconditionViolatedError,
)
from covertorus.geometry import rank
from covertorus.rng import SplitMix64
from covertorus.specialization import (
    Verdict,
    amalgamate,
    diagonal_step,
    independent,
    is_specialization,
    same_qf_type,
    strongly_regular,
)
from covertorus.verifier import gen_substitution, gen_tuple, substitute_tuple

E = CoverPoint.e
K = CoverPoint.kappa
Z = CoverPoint.zero()


class TestIsSpecialization:
    def test_examples(self):
        sc = is_specialization((E(1), E(2)), (E(3), E(3)))
        assert sc.verdict and sc.rank_drop == 1
        sc = is_specialization((E(1), E(1)), (E(1), E(2)))
        assert not sc.verdict and sc.rank_drop is None
        sc = is_specialization((E(1),), (E(1),))
        assert sc.verdict and sc.rank_drop == 0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            is_specialization((E(1),), (E(1), E(2)))

    def test_repeated_coordinates_forced(self):
        # a1 = a2 forces b1 = b2 through the locus constraint
        assert not is_specialization((E(1), E(1)), (Z, K(1))).verdict
        assert is_specialization((E(1), E(1)), (K(1), K(1))).verdict

    def test_transitivity_and_monotonicity_generated(self):
        rng = SplitMix64(23)
        for _ in range(40):
            a = gen_tuple(rng, rng.randint(1, 3))
            f = gen_substitution(rng, [a])
            b = substitute_tuple(a, f)
            g = gen_substitution(rng, [b])
            c = substitute_tuple(b, g)
            ab = is_specialization(a, b)
            bc = is_specialization(b, c)
            ac = is_specialization(a, c)
            assert ab.verdict and bc.verdict and ac.verdict
            assert ab.rank_drop >= 0 and bc.rank_drop >= 0
            assert ac.rank_drop == ab.rank_drop + bc.rank_drop


class TestIndependence:
    def test_examples(self):
        assert independent((E(1),), (E(2),))
        assert not independent((E(1),), (E(1) + K(1),))
        assert independent((E(1),), (E(1),), over=(E(1),))


class TestQfType:
    def test_examples(self):
        assert same_qf_type((E(1), E(1)), (E(2), E(2)))
        assert not same_qf_type((E(1),), (K(1),))
        assert same_qf_type((E(1),), (E(1),))
        with pytest.raises(LengthMismatchError):
            same_qf_type((E(1),), (E(1), E(2)))

    def test_generics_of_locus_share_type(self):
        rng = SplitMix64(31)
        for _ in range(30):
            a = gen_tuple(rng, rng.randint(1, 3))
            rename = {
                i: CoverPoint.basis(i + 100)
                for p in a
                for i in p.support()
                if i % 2 == 0 and i != 0
            }
            b = substitute_tuple(a, rename)
            assert same_qf_type(a, b)


class TestDiagonalStep:
    def test_examples(self):
        mid = diagonal_step((E(1), E(2)), (Z, Z))
        assert mid[0] == mid[1] == CoverPoint.basis(6)
        assert rank((E(1), E(2))) - rank(mid) == 1

        mid = diagonal_step((E(1), E(2), K(1)), (Z, Z, K(1)))
        assert mid == (CoverPoint.basis(6), CoverPoint.basis(6), K(1))

        with pytest.raises(PreconditionViolatedError):
            diagonal_step((E(1), E(1)), (Z, Z))
        with pytest.raises(PreconditionViolatedError):
            diagonal_step((E(1), E(2)), (Z, K(1)))
        with pytest.raises(PreconditionViolatedError):
            diagonal_step((E(1), E(1) + K(1)), (Z, Z))  # target not a specialization

    def test_chain_verified(self):
        a = (E(1), E(2), E(1) + E(2))
        a2 = (K(1), K(1), K(2))
        mid = diagonal_step(a, a2)
        assert is_specialization(a, mid).rank_drop == 1
        assert is_specialization(mid, a2).verdict


class TestAmalgamate:
    def test_examples(self):
        b_star = amalgamate((E(1),), (E(1),), (E(2),), (Z,), (E(2),), (E(2),))
        assert len(b_star) == 1
        assert same_qf_type((E(1),) + b_star, (E(1), E(2)))
        assert independent(b_star, (E(2),), over=(E(1),))
        assert is_specialization((E(1),) + b_star + (E(2),), (E(1), Z, E(2))).verdict

        # identity specializations
        b_star = amalgamate((E(1),), (E(1),), (E(2),), (E(2),), (E(3),), (E(3),))
        assert same_qf_type((E(1),) + b_star, (E(1), E(2)))

        # rank drop one on a
        b_star = amalgamate((E(1),), (K(0),), (E(2),), (K(0),), (E(3),), (E(3),))
        assert is_specialization((E(1),) + b_star + (E(3),), (K(0), K(0), E(3))).verdict

    def test_preconditions(self):
        with pytest.raises(PreconditionViolatedError):
            # rank drop 2 on a
            amalgamate((E(1), E(2)), (Z, Z), (E(3),), (E(3),), (E(4),), (E(4),))
        with pytest.raises(PreconditionViolatedError):
            # ab -> a'b' not a specialization
            amalgamate((E(1),), (E(1),), (E(1),), (E(2),), (E(3),), (E(3),))

    def test_dependent_b(self):
        # b tied to a: witness must reproduce the tie
        a, b = (E(1),), (E(1, 2) + K(1),)
        b_star = amalgamate(a, a, b, b, (E(5),), (E(5),))
        assert b_star == b  # fiber over a is a single point


class TestStronglyRegular:
    def test_examples(self):
        assert strongly_regular((E(1), E(1)), (E(1), E(1))) is Verdict.TRUE
        assert strongly_regular((E(1),), (K(1),)) is Verdict.TRUE
        assert strongly_regular((E(1), E(2)), (K(1), K(1))) is Verdict.TRUE

    def test_not_specialization_raises(self):
        with pytest.raises(NotSpecializationError):
            strongly_regular((E(1), E(1)), (E(1), E(2)))

    def test_dependent_pair_iso(self):
        v = strongly_regular((E(1), E(1) + K(1)), (E(2), E(2) + K(1)))
        assert v is Verdict.TRUE

    def test_dependent_drop_without_split_is_false(self):
        # (e1, 2e1) -> (k, 2k): rank drop 1, no independent split, not iso
        v = strongly_regular((E(1), E(1, 2)), (K(1), K(2)))
        assert v is Verdict.FALSE

    def test_depth_exhaustion_unknown(self):
        a = (E(1), E(2))
        v = strongly_regular(a, (K(1), K(1)), depth=0)
        assert v is Verdict.UNKNOWN
