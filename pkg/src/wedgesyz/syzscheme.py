"""Quadric syzygy schemes of Koszul cycles.

A cycle gamma = sum_J x_J (x) f_J in wedge^p S_1 (x) (I_X)_2 has a unique
representative (there are no boundaries in that degree), and the quadrics
it needs are the span of its coefficients f_J.  I(gamma) is the ideal of
that span and the quadric count is its dimension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .exterior import ExteriorElement, column_to_cycle
from .groebner import (
    Ideal,
    colon_ideal,
    ideal_equal,
    intersect_ideals,
    irrelevant_ideal,
    is_subideal,
    saturate,
)
from .koszul import KoszulChain, is_koszul_cycle
from .linalg import dense_inverse, rref
from .ring import Polynomial


class SyzygySchemeError(ValueError):
    pass


def _check_cycle(gamma):
    if not isinstance(gamma, KoszulChain):
        raise SyzygySchemeError("expected a Koszul chain")
    if gamma.p >= 1 and not is_koszul_cycle(gamma):
        raise SyzygySchemeError("chain is not a Koszul cycle")


def _coefficient_span(gamma):
    """Echelon basis of the span of the coefficients, with the monomial index."""
    coeffs = [gamma.terms[idx] for idx in sorted(gamma.terms)]
    order = sorted({m for f in coeffs for m in f.as_dict()}, key=gamma.ring.key, reverse=True)
    pos = {m: k for k, m in enumerate(order)}
    rows = rref([{pos[m]: c for m, c in f.as_dict().items()} for f in coeffs])
    return [Polynomial(gamma.ring, {order[k]: c for k, c in r.items()}) for r in rows]


def quadric_span(gamma):
    """Basis (reduced echelon form) of the quadrics gamma involves."""
    _check_cycle(gamma)
    return _coefficient_span(gamma)


def quadric_count(gamma):
    return len(quadric_span(gamma))


def generator_support(gamma, gens):
    """Indices of gens with a nonzero coefficient when gamma is written over gens.

    This is the count for the stored representative; it can exceed the
    quadric count when gamma uses a combination of generators twice over
    the same wedge term.
    """
    from .linalg import solve

    mons = {}
    cols = []
    for g in gens:
        cols.append({mons.setdefault(m, len(mons)): c for m, c in g.as_dict().items()})
    used = set()
    for idx, f in gamma.terms.items():
        vec = {}
        for m, c in f.as_dict().items():
            if m not in mons:
                raise SyzygySchemeError("coefficient outside the span of the generators")
            vec[mons[m]] = c
        (x,) = solve(cols, [vec])
        if x is None:
            raise SyzygySchemeError("coefficient outside the span of the generators")
        used.update(k for k, v in x.items() if v)
    return sorted(used)


def syzygy_ideal(gamma, gens=None):
    """I(gamma): the ideal of the quadrics gamma involves."""
    basis = quadric_span(gamma)
    ideal = Ideal(gamma.ring, basis)
    if gens is not None:
        gens = list(gens)
        if not is_subideal(ideal, Ideal(gamma.ring, gens)):
            raise SyzygySchemeError("cycle coefficients are not in the ideal of the generators")
    return ideal


def support_span(gamma):
    """Smallest space W of linear forms with gamma in wedge^p W (x) I_2.

    gamma = sum_k omega_k (x) g_k over a basis g_k of its quadric span;
    W is spanned by all contractions of the omega_k by (p-1)-covectors.
    Defined for any chain, not only cycles.
    """
    if not isinstance(gamma, KoszulChain):
        raise SyzygySchemeError("expected a Koszul chain")
    if not gamma:
        raise SyzygySchemeError("zero chain has no support")
    ring = gamma.ring
    basis = _coefficient_span(gamma)
    pivots = [g.leading_monomial() for g in basis]
    omegas = [ExteriorElement.zero(ring, gamma.p) for _ in basis]
    for idx, f in gamma.terms.items():
        for k, m in enumerate(pivots):
            c = f.coeff(m)
            if c:
                omegas[k] = omegas[k] + ExteriorElement(ring, gamma.p, {idx: c})
    vecs = []
    for om in omegas:
        for K in combinations(range(ring.nvars), gamma.p - 1):
            lin = om.contract(K)
            if lin:
                vecs.append({idx[0]: c for idx, c in lin.terms.items()})
    return [ring.linear_form([r.get(i, 0) for i in range(ring.nvars)]) for r in rref(vecs)]


# the generator dropping construction -------------------------------------------------


def completion_matrix(c):
    """Invertible matrix with first row c, completed by standard basis rows."""
    c = [Fraction(x) for x in c]
    if not any(c):
        raise SyzygySchemeError("coefficient row is zero")
    k0 = next(i for i, x in enumerate(c) if x)
    n = len(c)
    P = [c] + [[Fraction(int(j == i)) for j in range(n)] for i in range(n) if i != k0]
    return P


def drop_generator_transform(D, c, gens):
    """D' = P D P^T and generators Q' with Q' P = Q, P having first row c.

    Column 1 of D' is the cycle sum_b c_b gamma_b written over Q', and its
    (1,1) entry vanishes because D' is skew.
    """
    if D.nrows != D.ncols or D.nrows != len(c) or len(gens) != len(c):
        raise SyzygySchemeError("sizes of D, c and the generators disagree")
    P = completion_matrix(c)
    Pt = [list(r) for r in zip(*P)]
    Dp = D.constant_times(P).times_constant(Pt)
    Pinv = dense_inverse(P)
    ring = D.ring
    Qp = []
    for j in range(len(gens)):
        acc = ring.zero()
        for i, g in enumerate(gens):
            if Pinv[i][j]:
                acc = acc + g * Pinv[i][j]
        Qp.append(acc)
    return Dp, Qp


def quadric_count_range(e):
    return comb(e, 2), comb(e + 1, 2) - 2


@dataclass
class BoundsReport:
    e: int
    lower: int
    upper: int
    column_counts: list = field(default_factory=list)
    sample_counts: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def to_text(self):
        lines = [
            f"e = {self.e}: bounds {self.lower} <= m <= {self.upper}",
            "columns: " + " ".join(map(str, self.column_counts)),
            f"samples ({len(self.sample_counts)}): " + " ".join(map(str, self.sample_counts)),
            f"bounds hold: {'yes' if self.ok else 'no'}",
        ]
        lines += [f"  violation: {f}" for f in self.failures]
        return "\n".join(lines) + "\n"

    def to_kv(self):
        lines = [f"e = {self.e}", f"lower = {self.lower}", f"upper = {self.upper}"]
        lines += [f"column.{j} = {m}" for j, m in enumerate(self.column_counts)]
        lines += [f"sample.{j} = {m}" for j, m in enumerate(self.sample_counts)]
        lines.append(f"ok = {'yes' if self.ok else 'no'}")
        return "\n".join(lines) + "\n"


def random_coefficients(rng, n, bound=5):
    while True:
        c = [rng.randint(-bound, bound) for _ in range(n)]
        if any(c):
            return c


def quadric_count_bounds(report, samples=20, seed=0):
    """Check the quadric-count bounds on columns and random combinations.

    ``report`` is a successful theorem check (its D_{e-1} and generators).
    """
    if not report.ok:
        raise SyzygySchemeError("theorem check did not pass")
    C = report.complex
    e = C.length
    D = report.D
    gens = [C.d(1)[(0, j)] for j in range(C.d(1).ncols)]
    lo, hi = quadric_count_range(e)
    out = BoundsReport(e, lo, hi)
    for j in range(D.ncols):
        m = quadric_count(column_to_cycle(D, j, gens))
        out.column_counts.append(m)
        if not lo <= m <= hi:
            out.failures.append(f"column {j}: m = {m}")
    rng = random.Random(seed)
    for s in range(samples):
        c = random_coefficients(rng, len(gens))
        Dp, Qp = drop_generator_transform(D, c, gens)
        gamma = column_to_cycle(Dp, 0, Qp)
        if not gamma:
            out.failures.append(f"sample {s}: zero cycle")
            continue
        m = quadric_count(gamma)
        out.sample_counts.append(m)
        if not lo <= m <= hi:
            out.failures.append(f"sample {s} {c}: m = {m}")
    return out


# decompositions ----------------------------------------------------------------------


@dataclass
class SyzygyIdealReport:
    gamma: KoszulChain
    ideal: Ideal
    quadric_count: int
    colon: Ideal
    decomposition_verified: bool
    colon_contains_ix: bool
    saturation: Ideal
    saturation_is_ix: bool
    support: list

    def to_text(self):
        ring = self.ideal.ring
        names = ", ".join(str(f) for f in self.support)
        lines = [
            f"quadric count: {self.quadric_count}",
            "I(gamma):",
            *(f"  {g}" for g in self.ideal.generators),
            "colon (I(gamma) : I_X):",
            *(f"  {g}" for g in self.colon.groebner.elements),
            f"I(gamma) = I_X cap colon: {'yes' if self.decomposition_verified else 'no'}",
            f"I_X inside colon: {'yes' if self.colon_contains_ix else 'no'}",
            f"saturation equals I_X: {'yes' if self.saturation_is_ix else 'no'}",
            f"support span ({len(self.support)} of {ring.nvars}): {names}",
        ]
        return "\n".join(lines) + "\n"

    def to_kv(self):
        lines = [f"quadric_count = {self.quadric_count}"]
        lines += [f"ideal.{k} = {g}" for k, g in enumerate(self.ideal.generators)]
        lines += [f"colon.{k} = {g}" for k, g in enumerate(self.colon.groebner.elements)]
        lines.append(f"decomposition_verified = {'yes' if self.decomposition_verified else 'no'}")
        lines.append(f"colon_contains_ix = {'yes' if self.colon_contains_ix else 'no'}")
        lines.append(f"saturation_is_ix = {'yes' if self.saturation_is_ix else 'no'}")
        lines += [f"support.{k} = {f}" for k, f in enumerate(self.support)]
        return "\n".join(lines) + "\n"


def syzygy_scheme_decompose(gamma, IX):
    """I(gamma), (I(gamma) : I_X), the union test and the saturation."""
    I = syzygy_ideal(gamma)
    if not is_subideal(I, IX):
        raise SyzygySchemeError("I(gamma) is not contained in I_X")
    colon = colon_ideal(I, IX)
    verified = ideal_equal(I, intersect_ideals(IX, colon))
    sat = saturate(I, irrelevant_ideal(I.ring))
    return SyzygyIdealReport(
        gamma=gamma,
        ideal=I,
        quadric_count=len(I.generators),
        colon=colon,
        decomposition_verified=verified,
        colon_contains_ix=is_subideal(IX, colon),
        saturation=sat,
        saturation_is_ix=ideal_equal(sat, IX),
        support=support_span(gamma),
    )


def intersected_syzygy_scheme(I, cycles):
    """Saturation of the sum of the I(gamma); its scheme is the intersection."""
    cycles = list(cycles)
    if not cycles:
        raise SyzygySchemeError("need at least one cycle")
    gens = []
    for g in cycles:
        if not g:
            raise SyzygySchemeError("zero cycle")
        gens.extend(syzygy_ideal(g).generators)
    total = Ideal(I.ring, gens)
    return saturate(total, irrelevant_ideal(I.ring))
