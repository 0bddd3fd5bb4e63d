"""Specializations between tuples, rank drops, independence, qf types,
the diagonal rank-drop step, and constructive amalgamation.

Specialization is decided by full-tuple locus membership: the locus is the
minimal irreducible set over the constants containing the source, so any
closed set containing the source contains it, and subtuple conditions
follow by cylindrification. Witness constructions place fresh generic
basis directions on the relevant fibers and always re-verify their own
postconditions before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .cover import CoverPoint, fresh_generic_indices
from .errors import (
    LengthMismatchError,
    NotSpecializationError,
    PreconditionViolatedError,
    WitnessVerificationFailedError,
)
from .geometry import locus, rank
from .linear import LinearSet

Tuple = tuple[CoverPoint, ...]


@dataclass(frozen=True)
class SpecCheck:
    """Verdict of a specialization test with its rank drop when positive."""

    source: Tuple
    target: Tuple
    verdict: bool
    rank_drop: Optional[int]


class Verdict(Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


def is_specialization(a: Sequence[CoverPoint], b: Sequence[CoverPoint]) -> SpecCheck:
    """Whether the coordinatewise map a -> b is a specialization.

    True iff b lies in locus(a); then every closed set over the constants
    containing any selection from a contains the matching selection from b.
    """
    a = tuple(a)
    b = tuple(b)
    if len(a) != len(b):
        raise LengthMismatchError("tuples have different lengths")
    if not a:
        return SpecCheck(a, b, True, 0)
    verdict = locus(a).member(b)
    drop = rank(a) - rank(b) if verdict else None
    return SpecCheck(a, b, verdict, drop)


def independent(
    a: Sequence[CoverPoint], b: Sequence[CoverPoint], over: Sequence[CoverPoint] = ()
) -> bool:
    """a independent from b over `over`: adjoining b does not drop rank."""
    base = tuple(over)
    return rank(a, base + tuple(b)) == rank(a, base)


def same_qf_type(a: Sequence[CoverPoint], b: Sequence[CoverPoint]) -> bool:
    """Equality of quantifier-free types over the constants.

    Holds iff the relation lattices with their exact constant values agree,
    i.e. the two loci coincide; both tuples are automatically generic in
    their own locus.
    """
    a = tuple(a)
    b = tuple(b)
    if len(a) != len(b):
        raise LengthMismatchError("tuples have different lengths")
    if not a:
        return True
    return locus(a).linear == locus(b).linear


def diagonal_step(a: Sequence[CoverPoint], a2: Sequence[CoverPoint]) -> Tuple:
    """The axiom-(9) building block: interpolate a -> a' -> a'' with the
    first two coordinates collapsed and rank drop exactly one.

    a' is a generic point (fresh basis directions) of locus(a) meet the
    diagonal v_1 = v_2, which contains a''.
    """
    a = tuple(a)
    a2 = tuple(a2)
    if len(a) != len(a2):
        raise LengthMismatchError("tuples have different lengths")
    if len(a) < 2:
        raise PreconditionViolatedError("need at least two coordinates")
    if a[0] == a[1]:
        raise PreconditionViolatedError("source already lies on the diagonal")
    if a2[0] != a2[1]:
        raise PreconditionViolatedError("target is off the diagonal")
    check = is_specialization(a, a2)
    if not check.verdict:
        raise PreconditionViolatedError("a'' is not a specialization of a")
    n = len(a)
    diag_row = [Fraction(0)] * n
    diag_row[0] = Fraction(1)
    diag_row[1] = Fraction(-1)
    D = locus(a).linear.with_constraint(diag_row, CoverPoint.zero())
    if D is None:
        raise PreconditionViolatedError("diagonal misses the locus")
    fresh = fresh_generic_indices(list(a) + list(a2), D.dimension())
    prime = D.generic_point(fresh)
    first = is_specialization(a, prime)
    second = is_specialization(prime, a2)
    if not (first.verdict and first.rank_drop == 1 and second.verdict):
        raise WitnessVerificationFailedError(
            "diagonal-step", "constructed midpoint failed verification"
        )
    return prime


def amalgamate(
    a: Sequence[CoverPoint],
    a1: Sequence[CoverPoint],
    b: Sequence[CoverPoint],
    b1: Sequence[CoverPoint],
    c: Sequence[CoverPoint],
    c1: Sequence[CoverPoint],
) -> Tuple:
    """Axiom (7): produce b* with tp(ab*) = tp(ab), b* independent from c
    over a, and ab*c -> a'b'c'; every postcondition is verified before the
    witness is returned.

    b* is a generic point of the fiber locus(a,b)(a) realized on fresh
    basis directions.
    """
    a, a1, b, b1, c, c1 = map(tuple, (a, a1, b, b1, c, c1))
    base = is_specialization(a, a1)
    if not base.verdict or base.rank_drop is None or base.rank_drop > 1:
        raise PreconditionViolatedError("a -> a' must specialize with rank drop <= 1")
    if not is_specialization(a + b, a1 + b1).verdict:
        raise PreconditionViolatedError("ab -> a'b' is not a specialization")
    if not is_specialization(a + c, a1 + c1).verdict:
        raise PreconditionViolatedError("ac -> a'c' is not a specialization")
    n, m = len(a), len(b)
    C = locus(a + b).linear
    fiber_rows = []
    for q, rhs in C.constraints:
        head, tail = q[:n], q[n:]
        shifted = rhs
        for qi, ai in zip(head, a):
            if qi:
                shifted = shifted - qi * ai
        fiber_rows.append((tail, shifted))
    fiber = LinearSet.try_from(m, fiber_rows)
    if fiber is None:
        raise PreconditionViolatedError("fiber over a is empty")
    fresh = fresh_generic_indices(
        list(a) + list(a1) + list(b) + list(b1) + list(c) + list(c1),
        fiber.dimension(),
    )
    bstar = fiber.generic_point(fresh)
    if not same_qf_type(a + bstar, a + b):
        raise WitnessVerificationFailedError("qf-type")
    if not independent(bstar, c, over=a):
        raise WitnessVerificationFailedError("independence")
    if not is_specialization(a + bstar + c, a1 + b1 + c1).verdict:
        raise WitnessVerificationFailedError("specialization")
    return bstar


def strongly_regular(
    a: Sequence[CoverPoint], a1: Sequence[CoverPoint], depth: int = 8
) -> Verdict:
    """Bounded certification of strong regularity.

    Clauses tried in order: isomorphism (rank drop zero with equal qf
    type), generic singleton source, and contiguous splits into
    independent parts, both halves recursively strongly regular. The
    search is exhaustive for the fragment's contiguous decompositions;
    exceeding the depth bound yields UNKNOWN, never a guess.
    """
    a = tuple(a)
    a1 = tuple(a1)
    check = is_specialization(a, a1)
    if not check.verdict:
        raise NotSpecializationError("not a specialization")
    return _regular_rec(a, a1, depth)


def _regular_rec(a: Tuple, a1: Tuple, depth: int) -> Verdict:
    if is_specialization(a, a1).rank_drop == 0 and same_qf_type(a, a1):
        return Verdict.TRUE
    if len(a) == 1:
        return Verdict.TRUE if rank(a) == 1 else Verdict.FALSE
    if depth <= 0:
        return Verdict.UNKNOWN
    saw_unknown = False
    for i in range(1, len(a)):
        if not independent(a[:i], a[i:]):
            continue
        left = _regular_rec(a[:i], a1[:i], depth - 1)
        right = _regular_rec(a[i:], a1[i:], depth - 1)
        if left is Verdict.TRUE and right is Verdict.TRUE:
            return Verdict.TRUE
        if left is Verdict.UNKNOWN or right is Verdict.UNKNOWN:
            saw_unknown = True
    return Verdict.UNKNOWN if saw_unknown else Verdict.FALSE
