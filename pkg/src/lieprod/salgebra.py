"""
S-algebra certificates and block checks on derivations of products.

For a product p = g1 x g2 with decomposition d, a derivation D splits into
blocks D_ij = p_i D p_j (i, j in 1..3) where p_3 projects onto the new
central vectors. The checks here evaluate the block relations on concrete
derivation bases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .derivations import (
    DerivationSpace,
    cnla_check,
    derivation_space,
    is_derivation,
    nilpotency_exponent,
)
from .exactlin import Matrix, Subspace, span
from .genprod import ProductDecomposition
from .liecore import AlgebraInvariants, LieAlgebra, invariants

__all__ = [
    "DecompositionError",
    "GeneratorWitness",
    "SAlgebraCertificate",
    "s_algebra_certificate",
    "ProductContext",
    "Prop3Report",
    "prop3_check",
    "RelationsReport",
    "relations_check",
    "factor_algebra",
]


class DecompositionError(ValueError):
    """The decomposition does not describe the given product."""


# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorWitness:
    condition: int | None  # 1, 2, or None when no witness exists
    partner: int | None = None  # X'
    depth: int | None = None  # largest p with [X, X'] in C^p g (condition 1)
    y: int | None = None
    y_prime: int | None = None
    a: Fraction | None = None  # [X, X'] = a [Y, Y'] mod C^2 g

    def to_json(self) -> dict:
        if self.condition is None:
            return {"condition": None}
        out = {"condition": self.condition, "partner": self.partner}
        if self.condition == 1:
            out["p"] = self.depth
        else:
            out.update(y=self.y, y_prime=self.y_prime, a=str(self.a))
        return out


@dataclass(frozen=True)
class SAlgebraCertificate:
    verdict: str  # "certified" | "unknown"
    route: str  # "transporter_in_derived" | "prop4" | "none"
    transporter_in_derived: bool
    transporter_witnesses: list  # generator indices lying in T but not in C^1 g
    per_generator: dict  # generator index -> GeneratorWitness

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    @property
    def prop4_complete(self) -> bool:
        return all(w.condition is not None for w in self.per_generator.values())

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "route": self.route,
            "transporter_in_derived": self.transporter_in_derived,
            "transporter_witnesses": list(self.transporter_witnesses),
            "per_generator": {str(k): w.to_json() for k, w in sorted(self.per_generator.items())},
        }


def _depth(inv: AlgebraInvariants, vec: dict) -> int:
    """Largest p with vec in C^p g (the nilindex when vec = 0)."""
    p = 0
    while p + 1 < len(inv.lower_central) and inv.lower_central[p + 1].contains(vec):
        p += 1
    return p


def _scalar_multiple(u: dict, v: dict) -> Fraction | None:
    """a with u = a v, or None. Both nonzero sparse vectors."""
    if u.keys() != v.keys():
        return None
    k = next(iter(v))
    a = u[k] / v[k]
    if all(u[c] == a * v[c] for c in v):
        return a
    return None


def s_algebra_certificate(g: LieAlgebra, inv: AlgebraInvariants | None = None) -> SAlgebraCertificate:
    """Sufficient conditions for g to be an S-algebra.

    Route 1: the transporter lies in C^1 g. Route 2: every generator X has a
    generator X' != X with [X, X'] in C^2 g (condition 1), or generators
    X', Y, Y' with [X, X'] = a [Y, Y'] mod C^2 g, a != 0, {Y, Y'} != {X, X'}
    (condition 2). Witnesses are the lexicographically first found. Failure
    of both routes gives "unknown", never a negative.
    """
    if g.is_abelian():
        raise ValueError("S-algebra certificates are defined for nonabelian algebras")
    if inv is None:
        inv = invariants(g)
    gens = inv.generator_indices
    derived = inv.derived
    t_in = derived.contains_subspace(inv.transporter)
    t_wit = [x for x in gens if inv.transporter.contains({x - 1: 1}) and not derived.contains({x - 1: 1})]
    per = {x: prop4_generator_check(g, x, inv) for x in gens}
    prop4 = all(w.condition is not None for w in per.values())
    route = "transporter_in_derived" if t_in else ("prop4" if prop4 else "none")
    return SAlgebraCertificate(
        verdict="certified" if route != "none" else "unknown",
        route=route,
        transporter_in_derived=t_in,
        transporter_witnesses=t_wit,
        per_generator=per,
    )


def prop4_generator_check(g: LieAlgebra, x: int, inv: AlgebraInvariants | None = None) -> GeneratorWitness:
    """First witness for generator X_x (1-based), or a witness with condition None."""
    if inv is None:
        inv = invariants(g)
    gens = inv.generator_indices
    if x not in gens:
        raise ValueError(f"X{x} is not one of the generators {gens}")
    c2 = inv.term(2)

    def br(a, b):
        return g.bracket_basis(a - 1, b - 1)

    for xp in gens:
        if xp != x and c2.contains(br(x, xp)):
            return GeneratorWitness(1, xp, _depth(inv, br(x, xp)))
    return _condition2(x, gens, br, c2) or GeneratorWitness(None)


def _condition2(x, gens, br, c2: Subspace) -> GeneratorWitness | None:
    for xp in gens:
        if xp == x:
            continue
        lhs = c2.reduce(br(x, xp))
        if not lhs:
            continue
        for y in gens:
            for yp in gens:
                if y == yp or {y, yp} == {x, xp}:
                    continue
                rhs = c2.reduce(br(y, yp))
                if not rhs:
                    continue
                a = _scalar_multiple(lhs, rhs)
                if a:
                    return GeneratorWitness(2, xp, None, y, yp, a)
    return None


def recheck_witness(g: LieAlgebra, x: int, w: GeneratorWitness, inv: AlgebraInvariants | None = None) -> bool:
    """Re-evaluate a witness from scratch."""
    if w.condition is None or w.partner is None:
        return False
    if inv is None:
        inv = invariants(g)
    c2 = inv.term(2)
    bxx = g.bracket_basis(x - 1, w.partner - 1)
    if w.condition == 1:
        return c2.contains(bxx) and w.partner != x
    if w.condition == 2:
        diff = dict(bxx)
        for k, v in g.bracket_basis(w.y - 1, w.y_prime - 1).items():
            diff[k] = diff.get(k, 0) - w.a * v
        return w.a != 0 and c2.contains(diff)
    return False


# -- product context ----------------------------------------------------------


def factor_algebra(p: LieAlgebra, dec: ProductDecomposition, i: int) -> LieAlgebra:
    """The factor g_i (i = 1, 2) read back from the product's bracket table."""
    block = dec.block(i)
    off = block.start - 1
    brackets = {}
    for a in block:
        for b in block:
            if a < b:
                vec = p.brackets.get((a, b))
                if vec:
                    brackets[(a - off, b - off)] = {k - off: c for k, c in vec.items()}
    return LieAlgebra(len(block), brackets)


def _check_decomposition(p: LieAlgebra, dec: ProductDecomposition) -> None:
    r1, r2, r3 = dec.g1_range, dec.g2_range, dec.g3_range
    if not (r1[0] == 1 and r2[0] == r1[1] + 1 and r3[0] == r2[1] + 1 and r3[1] == p.dim):
        raise DecompositionError(f"ranges {r1}, {r2}, {r3} do not partition 1..{p.dim} in order")
    if any(r[1] < r[0] for r in (r1, r2, r3)):
        raise DecompositionError("empty or reversed block range")
    if len(dec.block(3)) != dec.n1 * dec.n2:
        raise DecompositionError(f"g3 has {len(dec.block(3))} vectors, expected n1*n2 = {dec.n1 * dec.n2}")
    b1, b2, b3 = dec.block(1), dec.block(2), dec.block(3)
    if not set(dec.g1_generators) <= set(b1) or not set(dec.g2_generators) <= set(b2):
        raise DecompositionError("generator lists do not lie in their blocks")
    gpos1 = {a: i for i, a in enumerate(dec.g1_generators, start=1)}
    gpos2 = {b: j for j, b in enumerate(dec.g2_generators, start=1)}
    for (a, b), vec in p.brackets.items():
        targets = set(vec)
        if a in b1 and b in b1:
            ok = targets <= set(b1)
        elif a in b2 and b in b2:
            ok = targets <= set(b2)
        elif a in b1 and b in b2:
            ok = a in gpos1 and b in gpos2 and vec == {dec.z_index(gpos1[a], gpos2[b]): 1}
        else:
            ok = False  # g3 must be central
        if not ok:
            raise DecompositionError(f"bracket [X{a}, X{b}] is inconsistent with the decomposition")
    for a in dec.g1_generators:
        for b in dec.g2_generators:
            if (a, b) not in p.brackets:
                raise DecompositionError(f"missing central vector for generator pair ({a}, {b})")


def _embed(sub: Subspace, offset: int, n: int) -> Subspace:
    return Subspace(n, tuple({k + offset: v for k, v in r.items()} for r in sub.basis))


class ProductContext:
    """Factor invariants embedded in product coordinates, plus block projections."""

    def __init__(self, p: LieAlgebra, dec: ProductDecomposition):
        _check_decomposition(p, dec)
        self.p = p
        self.dec = dec
        n = p.dim
        self.n = n
        self.factors = {i: factor_algebra(p, dec, i) for i in (1, 2)}
        self.factor_inv = {i: invariants(self.factors[i]) for i in (1, 2)}
        self.offset = {1: 0, 2: dec.g2_range[0] - 1, 3: dec.g3_range[0] - 1}
        self.blocks = {i: [a - 1 for a in dec.block(i)] for i in (1, 2, 3)}
        self.full = {i: span(n, ({a: Fraction(1)} for a in self.blocks[i])) for i in (1, 2, 3)}
        self.C1, self.C2, self.Z, self.T = {}, {}, {}, {}
        for i in (1, 2):
            inv, off = self.factor_inv[i], self.offset[i]
            self.C1[i] = _embed(inv.term(1), off, n)
            self.C2[i] = _embed(inv.term(2), off, n)
            self.Z[i] = _embed(inv.center, off, n)
            self.T[i] = _embed(inv.transporter, off, n)

    def split(self, d: Matrix) -> dict:
        """{(i, j): D_ij} as full-size matrices."""
        owner = {}
        for i, idx in self.blocks.items():
            for a in idx:
                owner[a] = i
        parts = {(i, j): [{} for _ in range(self.n)] for i in (1, 2, 3) for j in (1, 2, 3)}
        for r, row in enumerate(d.rows):
            bi = owner[r]
            for c, v in row.items():
                parts[(bi, owner[c])][r][c] = v
        return {k: Matrix(self.n, self.n, rows) for k, rows in parts.items()}

    def restrict(self, d: Matrix, i: int) -> Matrix:
        idx = self.blocks[i]
        return d.submatrix(idx, idx)


def _maps_into(m: Matrix, src: Subspace, dst: Subspace) -> bool:
    return all(dst.contains(m.apply(v)) for v in src.basis)


def _kills(m: Matrix, src: Subspace) -> bool:
    return all(not m.apply(v) for v in src.basis)


@dataclass
class Prop3Report:
    results: list = field(default_factory=list)  # (derivation index, relation, passed)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok in self.results)

    def failures(self) -> list:
        return [(k, name) for k, name, ok in self.results if not ok]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [{"derivation": k, "relation": name, "passed": ok} for k, name, ok in self.results],
        }


def prop3_check(
    p: LieAlgebra, dec: ProductDecomposition, der: DerivationSpace | None = None
) -> Prop3Report:
    """Block relations that hold for every derivation of any product by generators."""
    ctx = ProductContext(p, dec)
    if der is None:
        der = derivation_space(p)
    report = Prop3Report()
    for k, d in enumerate(der.basis):
        for name, ok in _prop3_relations(ctx, d):
            report.results.append((k, name, ok))
    return report


def _prop3_relations(ctx: ProductContext, d: Matrix):
    B = ctx.split(d)
    for i in (1, 2):
        yield f"D{i}{i} is a derivation of g{i}", is_derivation(ctx.factors[i], ctx.restrict(B[(i, i)], i))
    yield "D21(C1 g1) = 0", _kills(B[(2, 1)], ctx.C1[1])
    yield "D12(C1 g2) = 0", _kills(B[(1, 2)], ctx.C1[2])
    yield "D13(g3) in Z(g1)", _maps_into(B[(1, 3)], ctx.full[3], ctx.Z[1])
    yield "D23(g3) in Z(g2)", _maps_into(B[(2, 3)], ctx.full[3], ctx.Z[2])
    yield "D12(g2) in T1", _maps_into(B[(1, 2)], ctx.full[2], ctx.T[1])
    yield "D21(g1) in T2", _maps_into(B[(2, 1)], ctx.full[1], ctx.T[2])
    yield "D31(C2 g1) = 0", _kills(B[(3, 1)], ctx.C2[1])
    yield "D32(C2 g2) = 0", _kills(B[(3, 2)], ctx.C2[2])


# -- relations under the S hypothesis -----------------------------------------


@dataclass
class RelationsReport:
    results: list = field(default_factory=list)  # (label, relation, passed)
    guard_skips: list = field(default_factory=list)  # (label, (j, k)) skipped pairs
    power_bound_exponent: int | None = None
    observations: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok in self.results)

    @property
    def guard_triggered(self) -> bool:
        return bool(self.guard_skips)

    def failures(self) -> list:
        return [(k, name) for k, name, ok in self.results if not ok]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "power_bound_exponent": self.power_bound_exponent,
            "guard_skips": [{"derivation": k, "j": j, "k": kk} for k, (j, kk) in self.guard_skips],
            "observations": self.observations,
            "checks": [{"derivation": k, "relation": name, "passed": ok} for k, name, ok in self.results],
        }


def relations_check(
    p: LieAlgebra,
    dec: ProductDecomposition,
    factor_certs: Sequence[SAlgebraCertificate],
    der: DerivationSpace | None = None,
    samples: int = 3,
    seed: int = 0,
) -> RelationsReport:
    """Check the derivation-block relations that need both factors to be S-algebras.

    Runs on every derivation basis element and on ``samples`` random rational
    combinations (seeded). The power bound D^m = 0,
    m = a1 + 2 a2 + 2, is checked when both factors are characteristically
    nilpotent (a_i their orbit lengths, a2 >= a1).
    """
    if len(factor_certs) != 2 or not all(c is not None and c.certified for c in factor_certs):
        raise ValueError("relations need S-algebra certificates for both factors")
    ctx = ProductContext(p, dec)
    if der is None:
        der = derivation_space(p)
    alphas = []
    for i in (1, 2):
        f = ctx.factors[i]
        rep = cnla_check(f, route_b=False) if not f.is_abelian() else None
        alphas.append(rep.orbit_length if rep is not None else None)
    report = RelationsReport()
    if all(a is not None for a in alphas):
        a1, a2 = sorted(alphas)
        report.power_bound_exponent = a1 + 2 * a2 + 2
    rng = random.Random(seed)
    items = [(f"basis[{k}]", d) for k, d in enumerate(der.basis)]
    for s in range(samples if der.dim else 0):
        coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(der.dim)]
        items.append((f"random[{s}]", der.combination(coeffs)))
    items.append(("zero", Matrix.zeros(p.dim, p.dim)))
    image_in_derived = True
    d33_zero = True
    derived_p = invariants(p).derived
    for label, d in items:
        B = ctx.split(d)
        for name, ok in _relations(ctx, B, report, label):
            report.results.append((label, name, ok))
        if report.power_bound_exponent is not None:
            m = report.power_bound_exponent
            report.results.append((label, f"D^{m} = 0", _power(d, m).is_zero()))
        image_in_derived &= _maps_into(d, ctx.full[1] + ctx.full[2] + ctx.full[3], derived_p)
        d33_zero &= B[(3, 3)].is_zero()
    report.observations["every D maps p into C1 p"] = image_in_derived
    report.observations["D33 = 0 for every D"] = d33_zero
    return report


def _power(d: Matrix, m: int) -> Matrix:
    out = Matrix.identity(d.nrows)
    for _ in range(m):
        out = out @ d
        if out.is_zero():
            break
    return out


def _relations(ctx: ProductContext, B: dict, report: RelationsReport, label: str):
    whole = ctx.full[1] + ctx.full[2] + ctx.full[3]
    n = ctx.n
    # blocks holding under the S hypothesis
    yield "D12(g2) in C1 g1", _maps_into(B[(1, 2)], ctx.full[2], ctx.C1[1])
    yield "D12(C1 g2) = 0", _kills(B[(1, 2)], ctx.C1[2])
    yield "D21(g1) in C1 g2", _maps_into(B[(2, 1)], ctx.full[1], ctx.C1[2])
    yield "D21(C1 g1) = 0", _kills(B[(2, 1)], ctx.C1[1])
    for i in (1, 2):
        yield f"D{i}3(g3) in Z(g{i})", _maps_into(B[(i, 3)], ctx.full[3], ctx.Z[i])
        yield f"D3{i}(C1 g{i}) = 0", _kills(B[(3, i)], ctx.C1[i])
    # products through g1 or g2 vanish
    for j in (1, 2):
        for i in (1, 2, 3):
            for k in (1, 2, 3):
                if i != j and k != j:
                    yield f"D{i}{j} D{j}{k} = 0", (B[(i, j)] @ B[(j, k)]).is_zero()
    # products through g3
    for i in (1, 2):
        for j in (1, 2):
            d_i3_3j = B[(i, 3)] @ B[(3, j)]
            yield f"D{i}3 D3{j}(p) in Z(g{i})", _maps_into(d_i3_3j, whole, ctx.Z[i])
            for k in (1, 2, 3):
                if k != i:
                    yield f"D{k}{i} D{i}3 D3{j} = 0", (B[(k, i)] @ d_i3_3j).is_zero()
            for k in (1, 2, 3):
                if k != j:
                    yield f"D{i}3 D3{j} D{j}{k} = 0", (d_i3_3j @ B[(j, k)]).is_zero()
            mid = B[(i, 3)] @ B[(3, 3)] @ B[(3, j)]
            yield f"D{i}3 D33 D3{j}(p) in Z(g{i})", _maps_into(mid, whole, ctx.Z[i])
            for k in (1, 2, 3):
                if k != j:
                    yield f"D{i}3 D33 D3{j} D{j}{k} = 0", (mid @ B[(j, k)]).is_zero()
            for l in (1, 2, 3):
                if l != i:
                    yield f"D{l}{i} D{i}3 D33 D3{j} = 0", (B[(l, i)] @ mid).is_zero()
    # D_ij D_jj^m D_jk = 0, only meaningful when D_jk(g_k) lies in C1 g_j
    for j in (1, 2):
        for k in (1, 2, 3):
            if k == j:
                continue
            if not _maps_into(B[(j, k)], ctx.full[k], ctx.C1[j]):
                report.guard_skips.append((label, (j, k)))
                continue
            q = B[(j, k)]
            ok = {i: True for i in (1, 2, 3) if i != j}
            for _ in range(n):
                q = B[(j, j)] @ q
                if q.is_zero():
                    break
                for i in ok:
                    if ok[i] and not (B[(i, j)] @ q).is_zero():
                        ok[i] = False
            for i, good in ok.items():
                yield f"D{i}{j} D{j}{j}^m D{j}{k} = 0", good
    # D11, D22 nilpotent => D33^max(r1, r2) = 0
    r1 = nilpotency_exponent(B[(1, 1)])
    r2 = nilpotency_exponent(B[(2, 2)])
    if r1 is not None and r2 is not None:
        yield "D33 nilpotent", _power(B[(3, 3)], max(r1, r2)).is_zero()
