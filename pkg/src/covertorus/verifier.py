"""Seeded instance generation and batch verification of the in-scope
lemmas and Zariski-like axioms.

Every check is split into a generator (config + per-trial stream -> a
plain instance) and a pure validator (instance -> failure certificate or
None), so recorded failures replay exactly and validators can also be fed
deliberately corrupted instances when testing the suite itself. The check
order below is part of the report format; trial t of check i draws from
stream(seed, i, t).

The suite is a falsifier: it reports counterexamples, never statistics.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .cover import (
    CoverPoint,
    FieldPoint,
    eval_monomial,
    exp_point,
    field_one,
    fresh_generic_indices,
    pow_field,
    unity_root,
)
from .errors import CoverTorusError
from .geometry import (
    Cell,
    IrreducibleSet,
    PQFSet,
    is_generic,
    locus,
    log_components,
    member,
    permute,
    permute_point,
    rank,
)
from .lang import print_linear_decl, print_point_decl, print_torus_decl, print_tuple
from .lattice import saturate
from .linear import LinearSet
from .rng import SplitMix64, stream
from .specialization import (
    Verdict,
    amalgamate,
    diagonal_step,
    independent,
    is_specialization,
    same_qf_type,
    strongly_regular,
)
from .torus import (
    TorusPresentation,
    canonical_form,
    components,
    intersect,
    is_irreducible,
    linear_of_torus,
    mth_roots,
    normal_form,
    power,
    torus_of_linear,
    torus_sample_points,
)


@dataclass(frozen=True)
class VerifierConfig:
    seed: int
    trials: int
    max_arity: int = 4
    max_exponent: int = 6
    kernel_bound: int = 3

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        if min(self.max_arity, self.max_exponent, self.kernel_bound) < 1:
            raise ValueError("bounds must be positive")


@dataclass(frozen=True)
class CheckResult:
    name: str
    trials: int
    failures: tuple[tuple[int, str], ...]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Report:
    config: VerifierConfig
    results: tuple[CheckResult, ...]
    wall_ms: int

    def render(self, include_wall: bool = True) -> str:
        cfg = self.config
        lines = [
            f"verifier-report seed={cfg.seed} trials={cfg.trials} "
            f"max_arity={cfg.max_arity} max_exponent={cfg.max_exponent} "
            f"kernel_bound={cfg.kernel_bound}"
        ]
        for res in self.results:
            lines.append(
                f"check={res.name} trials={res.trials} failures={len(res.failures)}"
            )
            for trial, cert in res.failures:
                lines.append(f"  failure trial={trial}")
                for ln in cert.splitlines():
                    lines.append(f"    {ln}")
        if include_wall:
            lines.append(f"wall_time_ms={self.wall_ms}")
        return "\n".join(lines) + "\n"

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)


# -- instance generation ----------------------------------------------------


def gen_constant_point(rng: SplitMix64) -> CoverPoint:
    """A point of the constant subspace: torsion plus small g-combinations."""
    parts = []
    if rng.chance(2, 3):
        parts.append((0, Fraction(rng.randint(0, 3), rng.randint(1, 4))))
    for gi in (1, 2):
        if rng.chance(1, 3):
            parts.append((2 * gi - 1, rng.fraction(2, 3)))
    return CoverPoint(parts)


def gen_torus(rng: SplitMix64, arity: int, max_exponent: int) -> TorusPresentation:
    """A consistent presentation built around a concrete solution point."""
    x0 = tuple(exp_point(gen_constant_point(rng)) for _ in range(arity))
    nrows = rng.randint(0, arity)
    rows = []
    for _ in range(nrows):
        z = tuple(rng.randint(-max_exponent, max_exponent) for _ in range(arity))
        rows.append((z, eval_monomial(x0, z)))
    return TorusPresentation(arity, rows)


def gen_bounded_torus(
    rng: SplitMix64, arity: int, max_exponent: int, max_index: int = 36
) -> TorusPresentation:
    """A consistent torus whose saturation index stays enumerable."""
    while True:
        T = gen_torus(rng, arity, max_exponent)
        _, index = saturate(normal_form(T).lattice)
        if index <= max_index:
            return T


def gen_irreducible_torus(
    rng: SplitMix64, arity: int, max_exponent: int
) -> TorusPresentation:
    """An irreducible torus: saturated exponent rows, torsion-twisted values.

    Saturated rows admit any constant assignment, so twisting by roots of
    unity keeps the distribution covering all components, not just the one
    through the base solution.
    """
    from .lattice import IntMatrix
    from .cover import mul_field

    x0 = tuple(exp_point(gen_constant_point(rng)) for _ in range(arity))
    nrows = rng.randint(0, arity)
    raw = [
        [rng.randint(-max_exponent, max_exponent) for _ in range(arity)]
        for _ in range(nrows)
    ]
    sat, _ = saturate(IntMatrix(raw, arity))
    rows = []
    for z in sat.data:
        val = eval_monomial(x0, z)
        if rng.chance(1, 3):
            val = mul_field(
                val, unity_root(Fraction(rng.randint(0, 5), rng.randint(1, 6)))
            )
        rows.append((tuple(z), val))
    return TorusPresentation(arity, rows)


def gen_point(rng: SplitMix64, e_pool: int = 4) -> CoverPoint:
    """A cover point: sparse generic combination with optional constants."""
    if rng.chance(1, 4):
        return gen_constant_point(rng)
    parts = []
    for _ in range(rng.randint(1, 2)):
        q = rng.fraction(2, 2)
        if q:
            parts.append((2 * rng.randint(1, e_pool), q))
    point = CoverPoint(parts)
    if point.generic_part().is_zero():
        point = point + CoverPoint.e(rng.randint(1, e_pool))
    if rng.chance(1, 2):
        point = point + gen_constant_point(rng)
    return point


def gen_tuple(rng: SplitMix64, arity: int) -> tuple[CoverPoint, ...]:
    return tuple(gen_point(rng) for _ in range(arity))


def apply_substitution(
    p: CoverPoint, mapping: dict[int, CoverPoint]
) -> CoverPoint:
    """Q-linear basis substitution fixing all constant indices."""
    acc = CoverPoint.zero()
    for i, q in p.items():
        image = mapping.get(i)
        if image is not None and i % 2 == 0 and i != 0:
            acc = acc + q * image
        else:
            acc = acc + CoverPoint.basis(i, q)
    return acc


def substitute_tuple(t, mapping) -> tuple[CoverPoint, ...]:
    return tuple(apply_substitution(p, mapping) for p in t)


def gen_substitution(
    rng: SplitMix64, tuples, allow_merge: bool = True
) -> dict[int, CoverPoint]:
    """A random endomorphism of the generic directions (constants fixed).

    Every basis substitution induces specializations on all tuples at once,
    which is how source/target pairs are generated.
    """
    used = sorted(
        {
            i
            for t in tuples
            for p in t
            for i in p.support()
            if i % 2 == 0 and i != 0
        }
    )
    flat = [p for t in tuples for p in t]
    fresh = fresh_generic_indices(flat, len(used))
    mapping: dict[int, CoverPoint] = {}
    for j, idx in enumerate(used):
        kind = rng.randint(0, 3)
        if kind == 0:
            mapping[idx] = CoverPoint.basis(idx)
        elif kind == 1:
            mapping[idx] = gen_constant_point(rng)
        elif kind == 2 and allow_merge:
            mapping[idx] = CoverPoint.basis(rng.choice(used))
        else:
            mapping[idx] = CoverPoint.basis(fresh[j])
    return mapping


def _irreducible_set(
    rng: SplitMix64, cfg: VerifierConfig, arity: Optional[int] = None
) -> IrreducibleSet:
    """Loci of random tuples and bounded log-components, mixed."""
    n = arity or rng.randint(1, cfg.max_arity)
    if rng.chance(1, 2):
        return locus(gen_tuple(rng, n))
    T = gen_irreducible_torus(rng, n, cfg.max_exponent)
    comps = log_components(T, min(cfg.kernel_bound, 2))
    return comps[rng.randint(0, len(comps) - 1)]


def _sample_coeffs(rng: SplitMix64, count: int, width: int = 3):
    return [
        [rng.fraction(3, 3) for _ in range(width)] for _ in range(count)
    ]


# -- certificates ------------------------------------------------------------


def _cert(*blocks: str) -> str:
    return "\n".join(b for b in blocks if b)


# -- checks -------------------------------------------------------------------


def gen_torusbirat(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, min(cfg.max_arity, 4))
    return gen_bounded_torus(rng, n, cfg.max_exponent)


def check_torusbirat(T: TorusPresentation, samples: int = 6) -> Optional[str]:
    """Unimodularity and exact membership round-trip of the canonical form."""
    from .lattice import invert_unimodular
    from .torus import apply_monomial_matrix

    decl = print_torus_decl("T", T)
    branches = canonical_form(T)
    if not branches:
        return _cert(decl, "detail: no branches for a consistent torus")
    for b in branches:
        if abs(b.U.det()) != 1:
            return _cert(decl, f"detail: branch matrix determinant {b.U.det()}")
    for bi, b in enumerate(branches):
        uinv = invert_unimodular(b.U)
        k = len(b.constants)
        n = T.n
        for probe in range(2):
            y = list(b.constants)
            for j in range(n - k):
                filler = (
                    field_one()
                    if probe == 0
                    else exp_point(CoverPoint.e(30 + j) + CoverPoint.kappa(Fraction(1, 3)))
                )
                y.append(filler)
            x = apply_monomial_matrix(uinv, tuple(y))
            if not T.member(x):
                return _cert(
                    decl,
                    f"detail: branch {bi} pullback point escapes the torus",
                )
    coeffs = _sample_coeffs(SplitMix64(0xC0FFEE), samples)
    for x in torus_sample_points(T, coeffs):
        hits = 0
        for b in branches:
            y = apply_monomial_matrix(b.U, x)
            if tuple(y[: len(b.constants)]) == b.constants:
                hits += 1
        if hits != 1:
            return _cert(
                decl,
                f"detail: sampled solution lies in {hits} branches, expected 1",
            )
    return None


def gen_torusom_a(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, cfg.max_arity)
    return (
        gen_bounded_torus(rng, n, cfg.max_exponent),
        gen_bounded_torus(rng, n, cfg.max_exponent),
    )


def check_torusom_a(instance) -> Optional[str]:
    """Intersection of tori is the torus of concatenated rows."""
    T1, T2 = instance
    decls = _cert(print_torus_decl("T1", T1), print_torus_decl("T2", T2))
    J = intersect(T1, T2)
    probes = []
    for T in (T1, T2):
        if not is_empty_safe(T):
            probes.extend(torus_sample_points(T, _sample_coeffs(SplitMix64(1), 3)))
    if not is_empty_safe(J):
        probes.extend(torus_sample_points(J, _sample_coeffs(SplitMix64(2), 3)))
    for x in probes:
        if J.member(x) != (T1.member(x) and T2.member(x)):
            return _cert(
                decls, f"detail: membership mismatch at {print_tuple([p.rep for p in x])}"
            )
    return None


def is_empty_safe(T: TorusPresentation) -> bool:
    return not normal_form(T).consistent


def gen_torusom_b(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, min(cfg.max_arity, 3))
    return gen_bounded_torus(rng, n, min(cfg.max_exponent, 4))


def check_torusom_b(T: TorusPresentation) -> Optional[str]:
    """Component decomposition: count, irreducibility, disjointness, union."""
    decl = print_torus_decl("T", T)
    nf = normal_form(T)
    _, index = saturate(nf.lattice)
    comps = components(T)
    if len(comps) != index:
        return _cert(decl, f"detail: {len(comps)} components, saturation index {index}")
    forms = [normal_form(c) for c in comps]
    if len(set(forms)) != len(forms):
        return _cert(decl, "detail: components are not pairwise distinct")
    for idx, comp in enumerate(comps[:12]):
        if not is_irreducible(comp):
            return _cert(decl, f"detail: component {idx} is reducible")
        for x in torus_sample_points(comp, _sample_coeffs(SplitMix64(idx), 2)):
            if not T.member(x):
                return _cert(decl, f"detail: component {idx} escapes the torus")
            others = sum(1 for j, c in enumerate(comps) if j != idx and c.member(x))
            if others:
                return _cert(decl, f"detail: component {idx} overlaps {others} others")
    branch_forms = set()
    for b in canonical_form(T):
        k = len(b.constants)
        rows = [
            (tuple(b.U.data[i]), b.constants[i]) for i in range(k)
        ]
        branch_forms.add(normal_form(TorusPresentation(T.n, rows)))
    if branch_forms != set(forms):
        return _cert(decl, "detail: canonical branches disagree with components")
    return None


def gen_torusom_c(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, min(cfg.max_arity, 3))
    T = gen_irreducible_torus(rng, n, cfg.max_exponent)
    m = rng.randint(1, 4)
    return T, m


def check_torusom_c(instance) -> Optional[str]:
    """m-th roots: exact count m^k, distinct, powers return to T, and the
    root-of-unity action permutes the list."""
    T, m = instance
    decl = print_torus_decl("T", T)
    nf = normal_form(T)
    k = nf.lattice.nrows
    roots = mth_roots(T, m)
    if len(roots) != m**k:
        return _cert(decl, f"detail: expected {m ** k} roots of order {m}, got {len(roots)}")
    forms = [normal_form(X) for X in roots]
    if len(set(forms)) != len(forms):
        return _cert(decl, f"detail: roots of order {m} are not distinct")
    for X in roots:
        direct = TorusPresentation(
            T.n, [(z, pow_field(c, m)) for z, c in X.rows]
        )
        if normal_form(direct) != nf:
            return _cert(decl, f"detail: direct m-th power of a root differs from T (m={m})")
        if normal_form(power(X, m)) != nf:
            return _cert(decl, f"detail: bridge m-th power of a root differs from T (m={m})")
    form_set = set(forms)
    zeta = Fraction(1, m)
    for X in roots[:4]:
        # multiply every coordinate by the primitive m-th root of unity
        twisted = TorusPresentation(
            T.n,
            [
                (z, exp_point(c.rep + CoverPoint.kappa(zeta * sum(z))))
                for z, c in X.rows
            ],
        )
        if normal_form(twisted) not in form_set:
            return _cert(decl, f"detail: root-of-unity twist leaves the root set (m={m})")
    return None


def gen_torusom_d(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, cfg.max_arity)
    T = gen_irreducible_torus(rng, n, cfg.max_exponent)
    m = rng.randint(1, 4)
    return T, m


def check_torusom_d(instance) -> Optional[str]:
    """Powers of irreducible tori: bridge result equals the direct one."""
    T, m = instance
    decl = print_torus_decl("T", T)
    nf = normal_form(T)
    P = power(T, m)
    direct = TorusPresentation(
        T.n, [(z, pow_field(c, m)) for z, c in zip(nf.lattice.data, nf.values)]
    )
    if normal_form(P) != normal_form(direct):
        return _cert(decl, f"detail: bridge power disagrees with direct power (m={m})")
    for x in torus_sample_points(T, _sample_coeffs(SplitMix64(3), 3)):
        if not P.member(tuple(pow_field(xi, m) for xi in x)):
            return _cert(decl, f"detail: m-th power of a solution escapes T^m (m={m})")
    return None


def gen_singlemth(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, min(cfg.max_arity, 3))
    return gen_irreducible_torus(rng, n, cfg.max_exponent)


def check_singlemth(T: TorusPresentation) -> Optional[str]:
    """exp(L/m) is exactly one m-th root of T = exp(L)."""
    decl = print_torus_decl("T", T)
    L = linear_of_torus(T)
    for m in range(1, 5):
        X = torus_of_linear(L.scale(Fraction(1, m)))
        target = normal_form(X)
        hits = sum(1 for R in mth_roots(T, m) if normal_form(R) == target)
        if hits != 1:
            return _cert(decl, f"detail: exp(L/{m}) matched {hits} roots, expected 1")
    return None


def gen_linearirre(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, min(cfg.max_arity, 3))
    T = gen_irreducible_torus(rng, n, cfg.max_exponent)
    bound = min(cfg.kernel_bound, 2)
    comps = log_components(T, bound)
    pick = rng.randint(0, len(comps) - 1)
    shrink = rng.chance(1, 2)
    return T, bound, pick, shrink


def check_linearirre(instance) -> Optional[str]:
    """An irreducible set inside a union of kernel translates lies in one."""
    T, bound, pick, shrink = instance
    decl = print_torus_decl("T", T)
    comps = log_components(T, bound)
    chosen = comps[pick % len(comps)]
    C = chosen.linear
    if shrink:
        C = LinearSet.single_point(C.particular())
    containing = sum(1 for comp in comps if comp.linear.contains_set(C))
    if containing != 1:
        return _cert(
            decl,
            print_linear_decl("C", C),
            f"detail: contained in {containing} translates, expected exactly 1",
        )
    return None


def gen_komponentit(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, min(cfg.max_arity, 3))
    W = gen_bounded_torus(rng, n, min(cfg.max_exponent, 4), 12)
    return W, min(cfg.kernel_bound, 2)


def check_komponentit(instance) -> Optional[str]:
    """Components of log W: disjoint translates, each exp-ing onto the
    matching torus component, and every torus component is reached."""
    W, bound = instance
    decl = print_torus_decl("W", W)
    torus_comps = components(W)
    covered = set()
    for Tc in torus_comps[:4]:
        nf_tc = normal_form(Tc)
        translates = log_components(Tc, bound)
        for i, tr in enumerate(translates[:10]):
            back = normal_form(torus_of_linear(tr.linear))
            if back != nf_tc:
                return _cert(decl, f"detail: exp of a log-component differs from its torus component")
            for pt in tr.linear.spanning_points():
                if not Tc.member(tuple(exp_point(v) for v in pt)):
                    return _cert(decl, "detail: log-component point escapes under exp")
            for j, other in enumerate(translates[:10]):
                if i < j and tr.linear.intersect(other.linear) is not None:
                    return _cert(decl, f"detail: translates {i} and {j} intersect")
        covered.add(nf_tc)
    if len(covered) != len(torus_comps[:4]):
        return _cert(decl, "detail: duplicate torus components")
    return None


def gen_dimensio(cfg: VerifierConfig, rng: SplitMix64):
    return _irreducible_set(rng, cfg)


def check_dimensio(C: IrreducibleSet) -> Optional[str]:
    """dim(C) through affine rank equals dim(exp C) through the exponent
    lattice, computed on both sides of the bridge."""
    affine = C.linear.dimension()
    image = torus_of_linear(C.linear)
    nf = normal_form(image)
    lattice_dim = C.n - nf.lattice.nrows
    if affine != lattice_dim:
        return _cert(
            print_linear_decl("C", C.linear),
            f"detail: affine dimension {affine}, exponent-lattice dimension {lattice_dim}",
        )
    return None


def gen_infchains(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, cfg.max_arity)
    anchor = tuple(gen_constant_point(rng) for _ in range(n))
    rows = [
        tuple(rng.fraction(2, 2) for _ in range(n))
        for _ in range(n + 2)
    ]
    return n, anchor, rows


def check_infchains(instance) -> Optional[str]:
    """Strictly descending chains have length at most n + 1."""
    n, anchor, rows = instance
    chain = [LinearSet.full(n)]
    for q in rows:
        rhs = CoverPoint.zero()
        for qi, ai in zip(q, anchor):
            if qi:
                rhs = rhs + qi * ai
        nxt = chain[-1].with_constraint(q, rhs)
        if nxt is not None and nxt.dimension() < chain[-1].dimension():
            chain.append(nxt)
    if len(chain) > n + 1:
        return f"detail: chain of length {len(chain)} in arity {n}"
    for upper, lower in zip(chain, chain[1:]):
        if not upper.contains_set(lower):
            return "detail: chain is not descending"
        if lower.dimension() >= upper.dimension():
            return "detail: proper inclusion without dimension drop"
    return None


def gen_dimthm(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, cfg.max_arity)
    return _irreducible_set(rng, cfg, n), _irreducible_set(rng, cfg, n)


def check_dimthm(instance) -> Optional[str]:
    """dim(X) >= dim(C1) + dim(C2) - n on nonempty intersections."""
    C1, C2 = instance
    X = C1.linear.intersect(C2.linear)
    if X is None:
        return None
    lhs = X.dimension()
    rhs = C1.dimension() + C2.dimension() - C1.n
    if lhs < rhs:
        return _cert(
            print_linear_decl("C1", C1.linear),
            print_linear_decl("C2", C2.linear),
            f"detail: dim(X)={lhs} < {rhs}",
        )
    return None


def gen_axiom_1(cfg: VerifierConfig, rng: SplitMix64):
    C = _irreducible_set(rng, cfg)
    probe = gen_tuple(rng, C.n)
    return C, probe


def check_axiom_1(instance) -> Optional[str]:
    """Definability over the empty set: constant right-hand sides and
    invariance under automorphisms of the generic directions."""
    C, probe = instance
    decl = print_linear_decl("C", C.linear)
    for _, rhs in C.linear.constraints:
        if not rhs.generic_part().is_zero():
            return _cert(decl, "detail: presentation uses a non-constant parameter")
    used = sorted(
        {i for p in probe for i in p.support() if i % 2 == 0 and i != 0}
    )
    fresh = fresh_generic_indices(list(probe) + [rhs for _, rhs in C.linear.constraints], len(used))
    rename = {idx: CoverPoint.basis(f) for idx, f in zip(used, fresh)}
    if C.member(probe):
        if not C.member(substitute_tuple(probe, rename)):
            return _cert(decl, "detail: membership not invariant under a generic automorphism")
    for pt in C.linear.spanning_points():
        mapped = substitute_tuple(pt, rename)
        if not C.member(mapped):
            return _cert(decl, "detail: set not fixed by a generic automorphism")
    return None


def gen_axiom_2(cfg: VerifierConfig, rng: SplitMix64):
    return gen_tuple(rng, rng.randint(1, cfg.max_arity))


def check_axiom_2(a) -> Optional[str]:
    """Every tuple is generic in its locus."""
    C = locus(a)
    if not C.member(a):
        return _cert(print_tuple(a), "detail: tuple escapes its own locus")
    if not is_generic(a, C):
        return _cert(print_tuple(a), "detail: tuple not generic in its locus")
    return None


def gen_axiom_3(cfg: VerifierConfig, rng: SplitMix64):
    return gen_tuple(rng, rng.randint(1, cfg.max_arity))


def check_axiom_3(a) -> Optional[str]:
    """Generic points of one irreducible set share their qf type."""
    C = locus(a)
    d = C.linear.dimension()
    pool = list(a) + [rhs for _, rhs in C.linear.constraints]
    fresh = fresh_generic_indices(pool, 2 * d)
    p1 = C.linear.generic_point(fresh[:d])
    p2 = C.linear.generic_point(fresh[d:])
    if not (is_generic(p1, C) and is_generic(p2, C)):
        return _cert(print_tuple(a), "detail: fresh-direction points are not generic")
    if not same_qf_type(p1, p2):
        return _cert(print_tuple(a), "detail: generic points with distinct qf types")
    if not same_qf_type(p1, a):
        return _cert(print_tuple(a), "detail: generic point type differs from the tuple's")
    return None


def gen_axiom_4(cfg: VerifierConfig, rng: SplitMix64):
    b = gen_tuple(rng, rng.randint(1, cfg.max_arity))
    mapping = gen_substitution(rng, [b])
    return b, substitute_tuple(b, mapping)


def check_axiom_4(instance) -> Optional[str]:
    """a generic in C and a in D imply C subset of D."""
    b, a = instance
    D = locus(b)
    C = locus(a)
    if not D.member(a):
        return _cert(print_tuple(b), print_tuple(a), "detail: substitution broke specialization")
    if not D.linear.contains_set(C.linear):
        return _cert(print_tuple(b), print_tuple(a), "detail: locus minimality violated")
    return None


def gen_axiom_5(cfg: VerifierConfig, rng: SplitMix64):
    half = max(1, cfg.max_arity // 2)
    a = gen_tuple(rng, rng.randint(1, half))
    b = gen_tuple(rng, rng.randint(1, half))
    return a, b


def check_axiom_5(instance) -> Optional[str]:
    """Projections of points of locus(a,b) land in locus(a)."""
    a, b = instance
    C1 = locus(a + b)
    C2 = locus(a)
    for pt in C1.linear.spanning_points():
        head = pt[: len(a)]
        if not C2.member(head):
            return _cert(
                print_tuple(a), print_tuple(b), "detail: projection escapes locus(a)"
            )
    return None


def gen_axiom_6(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(1, min(cfg.max_arity, 4))
    v0 = gen_tuple(rng, n)
    m = rng.randint(1, 3)
    T = torus_of_linear(locus(v0).linear)
    L = locus(v0).linear
    x = tuple(Fraction(m) * v for v in v0)
    sigma = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.randint(0, i)
        sigma[i], sigma[j] = sigma[j], sigma[i]
    probes = [x, gen_tuple(rng, n)]
    return Cell(m, L, T), tuple(sigma), probes, v0


def check_axiom_6(instance) -> Optional[str]:
    """Permutation closure: membership commutes and loci permute."""
    cell, sigma, probes, v0 = instance
    S = PQFSet((cell,))
    SP = permute(S, sigma)
    for x in probes:
        if member(x, S) != member(permute_point(x, sigma), SP):
            return _cert(print_tuple(x), "detail: membership does not commute with permutation")
    if not member(probes[0], S):
        return _cert(print_tuple(probes[0]), "detail: constructed point missed its own cell")
    if locus(permute_point(v0, sigma)).linear != locus(v0).linear.permute(sigma):
        return _cert(print_tuple(v0), "detail: locus does not commute with permutation")
    return None


def gen_axiom_7(cfg: VerifierConfig, rng: SplitMix64):
    """Tuples built from distinct generic singletons and constants, with a
    substitution sending at most one generic to a constant: rank drop <= 1
    and strong regularity hold by construction and are re-verified."""
    arity = rng.randint(1, 3)
    coords = []
    gens = []
    for i in range(arity):
        if rng.chance(1, 4):
            coords.append(gen_constant_point(rng))
        else:
            idx = 2 * (10 + i)
            gens.append(idx)
            coords.append(CoverPoint.basis(idx))
    a = tuple(coords)
    b = gen_tuple(rng, rng.randint(1, 2))
    c = gen_tuple(rng, rng.randint(1, 2))
    mapping: dict[int, CoverPoint] = {}
    fresh = fresh_generic_indices(list(a) + list(b) + list(c), len(gens) + 1)
    drop_at = rng.randint(0, len(gens)) if gens else 0
    for j, idx in enumerate(gens):
        if j == drop_at:
            mapping[idx] = gen_constant_point(rng)
        elif rng.chance(1, 2):
            mapping[idx] = CoverPoint.basis(fresh[j])
        else:
            mapping[idx] = CoverPoint.basis(idx)
    extra = gen_substitution(rng, [b, c])
    for idx, image in extra.items():
        mapping.setdefault(idx, image)
    a1 = substitute_tuple(a, mapping)
    b1 = substitute_tuple(b, mapping)
    c1 = substitute_tuple(c, mapping)
    return a, a1, b, b1, c, c1


def check_axiom_7(instance) -> Optional[str]:
    """Amalgamation produces a verified witness on every valid instance."""
    a, a1, b, b1, c, c1 = instance
    header = _cert(
        "tuples:",
        f"  a  = {print_tuple(a)}",
        f"  a' = {print_tuple(a1)}",
        f"  b  = {print_tuple(b)}",
        f"  b' = {print_tuple(b1)}",
        f"  c  = {print_tuple(c)}",
        f"  c' = {print_tuple(c1)}",
    )
    base = is_specialization(a, a1)
    if not base.verdict or base.rank_drop > 1:
        return _cert(header, "detail: generated instance violates its own precondition")
    if strongly_regular(a, a1) is not Verdict.TRUE:
        return _cert(header, "detail: generated instance is not strongly regular")
    try:
        bstar = amalgamate(a, a1, b, b1, c, c1)
    except CoverTorusError as err:
        return _cert(header, f"detail: amalgamate failed: {err}")
    if not same_qf_type(a + bstar, a + b):
        return _cert(header, "detail: witness changes the qf type")
    if not independent(bstar, c, over=a):
        return _cert(header, "detail: witness depends on c over a")
    if not is_specialization(a + bstar + c, a1 + b1 + c1).verdict:
        return _cert(header, "detail: witness does not specialize")
    return None


def gen_axiom_9(cfg: VerifierConfig, rng: SplitMix64):
    n = rng.randint(2, max(2, cfg.max_arity))
    i1, i2 = 30, 31
    coords = [CoverPoint.e(i1), CoverPoint.e(i2)]
    for _ in range(n - 2):
        coords.append(gen_point(rng))
    a = tuple(coords)
    mapping = gen_substitution(rng, [a])
    target = mapping.get(2 * i1, CoverPoint.basis(2 * i1))
    mapping[2 * i2] = target
    mapping[2 * i1] = target
    a2 = substitute_tuple(a, mapping)
    return a, a2


def check_axiom_9(instance) -> Optional[str]:
    """Diagonal interpolation with rank drop exactly one."""
    a, a2 = instance
    header = _cert(f"a  = {print_tuple(a)}", f"a'' = {print_tuple(a2)}")
    try:
        mid = diagonal_step(a, a2)
    except CoverTorusError as err:
        return _cert(header, f"detail: diagonal step failed: {err}")
    if mid[0] != mid[1]:
        return _cert(header, "detail: midpoint is off the diagonal")
    first = is_specialization(a, mid)
    second = is_specialization(mid, a2)
    if not (first.verdict and second.verdict):
        return _cert(header, "detail: interpolation is not a chain of specializations")
    if first.rank_drop != 1:
        return _cert(header, f"detail: rank drop {first.rank_drop}, expected 1")
    return None


CHECKS: tuple[tuple[str, Callable, Callable], ...] = (
    ("torusbirat", gen_torusbirat, check_torusbirat),
    ("torusom_a", gen_torusom_a, check_torusom_a),
    ("torusom_b", gen_torusom_b, check_torusom_b),
    ("torusom_c", gen_torusom_c, check_torusom_c),
    ("torusom_d", gen_torusom_d, check_torusom_d),
    ("singlemth", gen_singlemth, check_singlemth),
    ("linearirre", gen_linearirre, check_linearirre),
    ("komponentit", gen_komponentit, check_komponentit),
    ("dimensio", gen_dimensio, check_dimensio),
    ("infchains", gen_infchains, check_infchains),
    ("dimthm", gen_dimthm, check_dimthm),
    ("axiom_1", gen_axiom_1, check_axiom_1),
    ("axiom_2", gen_axiom_2, check_axiom_2),
    ("axiom_3", gen_axiom_3, check_axiom_3),
    ("axiom_4", gen_axiom_4, check_axiom_4),
    ("axiom_5", gen_axiom_5, check_axiom_5),
    ("axiom_6", gen_axiom_6, check_axiom_6),
    ("axiom_7_amalgamation", gen_axiom_7, check_axiom_7),
    ("axiom_9_diagonal", gen_axiom_9, check_axiom_9),
)


def run_check(cfg: VerifierConfig, name: str, trial: int) -> Optional[str]:
    """Regenerate and revalidate one trial; used for failure replay."""
    for idx, (check_name, gen, validate) in enumerate(CHECKS):
        if check_name == name:
            rng = stream(cfg.seed, idx, trial)
            return validate(gen(cfg, rng))
    raise KeyError(f"unknown check {name!r}")


def run_suite(cfg: VerifierConfig) -> Report:
    """Run every check for cfg.trials trials; failures are data, never
    exceptions. Identical configs produce identical reports up to wall
    time."""
    started = time.monotonic()
    results = []
    for idx, (name, gen, validate) in enumerate(CHECKS):
        failures = []
        for trial in range(cfg.trials):
            rng = stream(cfg.seed, idx, trial)
            instance = gen(cfg, rng)
            cert = validate(instance)
            if cert is not None:
                failures.append((trial, cert))
        results.append(CheckResult(name, cfg.trials, tuple(failures)))
    wall_ms = int((time.monotonic() - started) * 1000)
    return Report(cfg, tuple(results), wall_ms)
