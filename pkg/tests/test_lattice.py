from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from covertorus.cover import CoverPoint
from covertorus.errors import NonPrimitiveError
from covertorus.lattice import (
    IntMatrix,
    RatMatrix,
    complete_unimodular,
    hnf,
    integer_kernel,
    integral_preimage_lattice,
    invert_unimodular,
    linear_solve,
    rational_kernel,
    saturate,
    snf,
)

small_entries = st.integers(min_value=-9, max_value=9)


def matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(small_entries, min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    ).map(IntMatrix)


def _minor_gcd(M, k):
    """gcd of all k x k minors; the determinant-divisor oracle for SNF."""
    from itertools import combinations

    g = 0
    for rows in combinations(range(M.nrows), k):
        for cols in combinations(range(M.ncols), k):
            sub = IntMatrix([[M.data[i][j] for j in cols] for i in rows])
            g = gcd(g, abs(sub.det()))
    return g


class TestHnf:
    def test_spec_example(self):
        M = IntMatrix([[2, 4], [1, 3]])
        H, U = hnf(M)
        assert [list(r) for r in H.data] == [[1, 1], [0, 2]]
        assert U.mul(M) == H
        assert abs(U.det()) == 1

    def test_identity(self):
        I = IntMatrix.identity(3)
        H, U = hnf(I)
        assert H == I and U == I

    def test_zero(self):
        Z = IntMatrix.zero(2, 2)
        H, U = hnf(Z)
        assert H == Z and U == IntMatrix.identity(2)

    @settings(max_examples=120, deadline=None)
    @given(matrices())
    def test_transform_and_shape(self, M):
        H, U = hnf(M)
        assert U.mul(M) == H
        assert abs(U.det()) == 1
        pivots = []
        for row in H.data:
            nz = [j for j, x in enumerate(row) if x]
            if not nz:
                continue
            p = nz[0]
            assert row[p] > 0
            pivots.append(p)
            for i in range(len(pivots) - 1):
                above = H.data[i][p]
                assert 0 <= above < row[p]
        assert pivots == sorted(pivots)

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_canonical_under_row_mixing(self, M):
        H1, _ = hnf(M)
        mixed = list(M.data)
        mixed.append(tuple(a + b for a, b in zip(M.data[0], M.data[-1])))
        H2, _ = hnf(IntMatrix(mixed, M.ncols))
        nz1 = [r for r in H1.data if any(r)]
        nz2 = [r for r in H2.data if any(r)]
        assert nz1 == nz2


class TestSnf:
    def test_spec_examples(self):
        assert snf(IntMatrix([[2, 0], [0, 3]])).divisors() == (1, 6)
        assert snf(IntMatrix([[2, 3]])).divisors() == (1,)
        assert snf(IntMatrix([[2, 0], [0, 2]])).divisors() == (2, 2)

    @settings(max_examples=120, deadline=None)
    @given(matrices())
    def test_decomposition(self, M):
        res = snf(M)
        assert res.U.mul(M).mul(res.V) == res.D
        assert abs(res.U.det()) == 1
        assert abs(res.V.det()) == 1
        divisors = res.divisors()
        for a, b in zip(divisors, divisors[1:]):
            assert a > 0 and b % a == 0

    @settings(max_examples=60, deadline=None)
    @given(matrices(3))
    def test_determinant_divisor_oracle(self, M):
        divisors = snf(M).divisors()
        prod = 1
        for k, d in enumerate(divisors, start=1):
            prod *= d
            assert prod == _minor_gcd(M, k)


class TestCompleteUnimodular:
    def test_spec_examples(self):
        A = complete_unimodular((2, 3))
        assert list(A.data[0]) == [2, 3]
        assert abs(A.det()) == 1
        assert complete_unimodular((1, 0, 0)) == IntMatrix.identity(3)
        with pytest.raises(NonPrimitiveError):
            complete_unimodular((2, 4))

    @settings(max_examples=150, deadline=None)
    @given(
        st.lists(st.integers(-20, 20), min_size=1, max_size=6).filter(
            lambda row: _row_gcd(row) == 1
        )
    )
    def test_primitive_rows(self, row):
        A = complete_unimodular(row)
        assert list(A.data[0]) == list(row)
        assert abs(A.det()) == 1


def _row_gcd(row):
    g = 0
    for x in row:
        g = gcd(g, abs(x))
    return g


class TestSaturate:
    def test_spec_examples(self):
        basis, index = saturate(IntMatrix([[2, 2]]))
        assert [list(r) for r in basis.data] == [[1, 1]] and index == 2
        basis, index = saturate(IntMatrix([[1, 0]]))
        assert [list(r) for r in basis.data] == [[1, 0]] and index == 1
        basis, index = saturate(IntMatrix([[6]]))
        assert [list(r) for r in basis.data] == [[1]] and index == 6

    @settings(max_examples=100, deadline=None)
    @given(matrices())
    def test_saturation_properties(self, M):
        basis, index = saturate(M)
        assert index >= 1
        # index * (saturated vector) lies in the original row lattice
        H, _ = hnf(M)
        lattice_rows = [r for r in H.data if any(r)]
        for vec in basis.data:
            scaled = [index * x for x in vec]
            assert _in_lattice(scaled, lattice_rows)
        again, idx2 = saturate(basis)
        assert again == basis and idx2 == 1


def _in_lattice(vec, hnf_rows):
    vec = list(vec)
    for row in hnf_rows:
        p = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(vec[p], row[p])
        if rem:
            return False
        vec = [a - q * b for a, b in zip(vec, row)]
    return not any(vec)


class TestKernelsAndSolve:
    def test_linear_solve_spec_examples(self):
        zero = CoverPoint.zero()
        p, k = linear_solve(RatMatrix([[1, -1]]), [zero], zero)
        assert p == [zero, zero]
        assert [list(r) for r in k.data] == [[1, 1]]

        kappa = CoverPoint.kappa()
        res = linear_solve(RatMatrix([[1], [1]]), [kappa, CoverPoint.kappa(2)], zero)
        assert res is None

        p, k = linear_solve(RatMatrix([[2, 3]]), [kappa], zero)
        assert p[0] == CoverPoint.kappa(Fraction(1, 2)) and p[1] == zero
        assert [list(r) for r in k.data] == [[3, -2]]
        # substitute back
        combo = 2 * p[0] + 3 * p[1]
        assert combo == kappa

    def test_integer_kernel(self):
        K = integer_kernel(IntMatrix([[1, -1]]))
        assert [list(r) for r in K.data] == [[1, 1]]
        K = integer_kernel(IntMatrix([], 2))
        assert K == IntMatrix.identity(2)

    def test_rational_kernel_primitive(self):
        K = rational_kernel(RatMatrix([[Fraction(1, 2), Fraction(1, 3)]]))
        assert [list(r) for r in K.data] == [[2, -3]]

    def test_integral_preimage(self):
        lat = integral_preimage_lattice(RatMatrix([[Fraction(1, 2)]]))
        assert [list(r) for r in lat.data] == [[2]]
        lat = integral_preimage_lattice(RatMatrix([], 3))
        assert lat == IntMatrix.identity(3)

    def test_invert_unimodular(self):
        U = IntMatrix([[2, 3], [1, 2]])
        V = invert_unimodular(U)
        assert U.mul(V) == IntMatrix.identity(2)
        with pytest.raises(ValueError):
            invert_unimodular(IntMatrix([[2, 0], [0, 1]]))
