"""Buchberger's algorithm and the ideal operations built on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement

from .linalg import Echelon, rref
from .ring import (
    Polynomial,
    PolyRing,
    RingMismatch,
    graded_piece_basis,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class Ideal:
    """An ideal given by generators; zero generators are dropped."""

    def __init__(self, ring, generators=()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring(g) if isinstance(g, str) else ring.const(g)
            if g.ring != ring:
                raise RingMismatch("generator from a different ring")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    @property
    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators)

    def is_zero(self):
        return not self.generators

    @cached_property
    def groebner(self):
        return buchberger(self)

    def contains(self, f):
        return not normal_form(f, self.groebner)

    def __contains__(self, f):
        return self.contains(f)

    def __add__(self, other):
        _same_ring(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash((self.ring, self.groebner.elements))

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))})"


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal = field(compare=False)
    elements: tuple
    order: str

    @property
    def ring(self):
        return self.ideal.ring

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _same_ring(i, j):
    if i.ring != j.ring:
        raise RingMismatch("ideals live in different rings")


# reduction on raw term dictionaries -------------------------------------------


def _reduce(terms, basis, key, full=True):
    """Reduce ``terms`` (a dict) modulo ``basis`` = list of (lm, lc, termdict)."""
    rem = dict(terms)
    out = {}
    while rem:
        m = max(rem, key=key)
        c = rem[m]
        for lm, lc, g in basis:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                f = c / lc
                for gm, gc in g.items():
                    t = mono_mul(gm, q)
                    s = rem.get(t, 0) - f * gc
                    if s:
                        rem[t] = s
                    else:
                        rem.pop(t, None)
                break
        else:
            if not full:
                rem.update(out)
                return rem
            out[m] = c
            del rem[m]
    return out


def _lead(terms, key):
    m = max(terms, key=key)
    return m, terms[m]


def buchberger(ideal):
    """Reduced, monic Groebner basis of ``ideal`` in its ring's order.

    Pairs are processed by the normal strategy (smallest lcm degree first);
    the coprime-leading-monomial and chain criteria discard pairs.
    """
    ring = ideal.ring
    key = ring.key
    basis = []  # (lm, lc, terms)
    pairs = set()

    def add(terms):
        lm, lc = _lead(terms, key)
        terms = {m: c / lc for m, c in terms.items()}
        new = len(basis)
        basis.append((lm, Fraction(1), terms))
        for i in range(new):
            if basis[i] is not None:
                pairs.add((i, new))

    for g in sorted(ideal.generators, key=lambda p: (p.degree(), key(p.leading_monomial()))):
        r = _reduce(g.as_dict(), [b for b in basis if b is not None], key)
        if r:
            add(r)

    done = set()
    while pairs:
        i, j = min(
            pairs,
            key=lambda p: (
                sum(mono_lcm(basis[p[0]][0], basis[p[1]][0])),
                key(mono_lcm(basis[p[0]][0], basis[p[1]][0])),
                p,
            ),
        )
        pairs.discard((i, j))
        done.add((i, j))
        lmi, _, gi = basis[i]
        lmj, _, gj = basis[j]
        lcm = mono_lcm(lmi, lmj)
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        if _chain_skip(i, j, lcm, basis, pairs):
            continue
        qi, qj = mono_div(lcm, lmi), mono_div(lcm, lmj)
        s = {}
        for m, c in gi.items():
            s[mono_mul(m, qi)] = c
        for m, c in gj.items():
            t = mono_mul(m, qj)
            v = s.get(t, 0) - c
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        if not s:
            continue
        r = _reduce(s, basis, key)
        if r:
            add(r)

    return GroebnerBasis(ideal, _interreduce(ring, basis), ring.order)


def _chain_skip(i, j, lcm, basis, pairs):
    for k in range(len(basis)):
        if k in (i, j):
            continue
        if not mono_divides(basis[k][0], lcm):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        return True
    return False


def _interreduce(ring, basis):
    key = ring.key
    elems = [b for b in basis if b is not None]
    minimal = []
    for idx, (lm, lc, g) in enumerate(elems):
        dominated = False
        for jdx, (lm2, _, _) in enumerate(elems):
            if jdx == idx:
                continue
            if mono_divides(lm2, lm) and (lm2 != lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            minimal.append((lm, lc, g))
    out = []
    for k, (lm, lc, g) in enumerate(minimal):
        others = [b for b in minimal if b[0] != lm]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = _reduce(tail, others, key)
        tail[lm] = Fraction(1)
        out.append(Polynomial(ring, tail))
    out.sort(key=lambda p: key(p.leading_monomial()), reverse=True)
    return tuple(out)


def groebner_basis(ideal):
    return ideal.groebner


def normal_form(f, G):
    """Remainder of ``f`` after full reduction by the Groebner basis ``G``."""
    if isinstance(G, Ideal):
        G = G.groebner
    if f.ring != G.ring:
        raise RingMismatch("polynomial and basis live in different rings")
    basis = [(g.leading_monomial(), Fraction(1), g.as_dict()) for g in G.elements]
    return Polynomial(f.ring, _reduce(f.as_dict(), basis, f.ring.key))


def reducer(G):
    """Fast repeated normal forms against a fixed basis (returns a closure)."""
    basis = [(g.leading_monomial(), Fraction(1), g.as_dict()) for g in G.elements]
    key = G.ring.key
    ring = G.ring

    def nf(f):
        return Polynomial(ring, _reduce(f.as_dict(), basis, key))

    return nf


def standard_monomials(G, d):
    """Monomials of degree ``d`` outside the leading-term ideal, descending."""
    lms = G.leading_monomials()
    return [m for m in graded_piece_basis(G.ring, d) if not any(mono_divides(l, m) for l in lms)]


# graded pieces ------------------------------------------------------------------


def _graded_vectors(ideal, d):
    ring = ideal.ring
    index = {m: k for k, m in enumerate(graded_piece_basis(ring, d))}
    for g in ideal.generators:
        dg = g.homogeneous_degree()
        if dg is None or dg > d:
            continue
        for mult in graded_piece_basis(ring, d - dg):
            yield {index[mono_mul(m, mult)]: c for m, c in g.as_dict().items()}


def vector_space_dim(ideal, d):
    """Dimension over Q of the degree ``d`` part of a homogeneous ideal."""
    if not ideal.is_homogeneous:
        raise ValueError("vector_space_dim needs a homogeneous ideal")
    if d < 0:
        return 0
    ech = Echelon()
    for v in _graded_vectors(ideal, d):
        ech.add(v)
    return ech.rank


def graded_piece(ideal, d):
    """A canonical basis (reduced echelon form) of the degree ``d`` part."""
    if not ideal.is_homogeneous:
        raise ValueError("graded_piece needs a homogeneous ideal")
    if d < 0:
        return []
    mons = graded_piece_basis(ideal.ring, d)
    rows = rref(_graded_vectors(ideal, d))
    return [Polynomial(ideal.ring, {mons[k]: c for k, c in row.items()}) for row in rows]


def minimal_generators(ideal):
    """Greedy minimal subset of the generators of a homogeneous ideal.

    Generators are scanned by degree (stable in the given order); one is
    kept when it is not in the span of degree-d multiples of those kept.
    """
    if not ideal.is_homogeneous:
        raise ValueError("minimal_generators needs a homogeneous ideal")
    ring = ideal.ring
    gens = sorted(ideal.generators, key=lambda g: g.homogeneous_degree())
    kept = []
    for g in gens:
        d = g.homogeneous_degree()
        ech = Echelon()
        for v in _graded_vectors(Ideal(ring, kept), d):
            ech.add(v)
        index = {m: k for k, m in enumerate(graded_piece_basis(ring, d))}
        vec = {index[m]: c for m, c in g.as_dict().items()}
        if not ech.contains(vec):
            kept.append(g)
    return kept


# elimination based operations ---------------------------------------------------


def _aux_ring(ring):
    name = "_t"
    while name in ring.variables:
        name += "_"
    return PolyRing((name,) + ring.variables, "elim")


def intersect_ideals(I, J):
    """I ∩ J via t*I + (1-t)*J, eliminating t."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    if is_subideal(I, J):
        return Ideal(ring, I.groebner.elements)
    if is_subideal(J, I):
        return Ideal(ring, J.groebner.elements)
    big = _aux_ring(ring)
    shift = list(range(1, big.nvars))
    t = big.var(0)
    gens = [t * f.map_ring(big, shift) for f in I.generators]
    gens += [(1 - t) * g.map_ring(big, shift) for g in J.generators]
    G = Ideal(big, gens).groebner
    back = []
    for g in G.elements:
        if all(m[0] == 0 for m in g.as_dict()):
            back.append(Polynomial(ring, {m[1:]: c for m, c in g.as_dict().items()}))
    result = Ideal(ring, back)
    return Ideal(ring, result.groebner.elements)


def _variable_index(g):
    terms = g.as_dict()
    if len(terms) != 1:
        return None
    (m, c), = terms.items()
    if sum(m) != 1:
        return None
    return m.index(1)


def _quotient_by_variable(I, k):
    """(I : x_k) for homogeneous I: in grevlex with x_k last, divide by x_k."""
    ring = I.ring
    n = ring.nvars
    perm = [i for i in range(n) if i != k] + [k]
    moved = PolyRing(tuple(ring.variables[i] for i in perm), "grevlex")
    where = [perm.index(i) for i in range(n)]
    G = Ideal(moved, [f.map_ring(moved, where) for f in I.generators]).groebner
    out = []
    for f in G.elements:
        if all(m[-1] > 0 for m in f.as_dict()):
            f = Polynomial(moved, {m[:-1] + (m[-1] - 1,): c for m, c in f.as_dict().items()})
        out.append(f.map_ring(ring, perm))
    return out


def quotient_by_element(I, g):
    """(I : g) = (I ∩ (g)) / g; a variable g uses the grevlex division trick."""
    k = _variable_index(g)
    if k is not None and I.is_homogeneous and I.ring.order == "grevlex":
        return Ideal(I.ring, Ideal(I.ring, _quotient_by_variable(I, k)).groebner.elements)
    inter = intersect_ideals(I, Ideal(I.ring, [g]))
    gens = [f / g for f in inter.generators]
    out = Ideal(I.ring, gens)
    return Ideal(I.ring, out.groebner.elements)


def colon_ideal(I, J):
    """(I : J) as the intersection of (I : g) over generators g of J."""
    _same_ring(I, J)
    if J.is_zero():
        raise ValueError("colon by the zero ideal")
    result = None
    for g in J.generators:
        q = quotient_by_element(I, g)
        result = q if result is None else intersect_ideals(result, q)
    return Ideal(I.ring, result.groebner.elements)


def saturation_chain(I, J, max_steps=50):
    """Ideals I, (I:J), ((I:J):J), ... up to the first repetition."""
    _same_ring(I, J)
    if J.is_zero():
        raise ValueError("saturation by the zero ideal")
    chain = [Ideal(I.ring, I.groebner.elements)]
    for _ in range(max_steps):
        nxt = colon_ideal(chain[-1], J)
        if ideal_equal(nxt, chain[-1]):
            return chain
        chain.append(nxt)
    raise RuntimeError("saturation did not stabilise")


def saturate(I, J):
    """(I : J^∞) by iterating colon ideals until the Groebner basis is stable."""
    return saturation_chain(I, J)[-1]


def ideal_equal(I, J):
    _same_ring(I, J)
    return I.groebner.elements == J.groebner.elements


def is_subideal(I, J):
    """True when I ⊆ J."""
    _same_ring(I, J)
    G = J.groebner
    return all(not normal_form(f, G) for f in I.generators)


def unit_ideal(ring):
    return Ideal(ring, [ring.one()])


def irrelevant_ideal(ring):
    return Ideal(ring, ring.gens())


def linear_ideal(ring, forms):
    return Ideal(ring, forms)
