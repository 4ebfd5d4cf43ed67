"""Graded free modules, complexes, Schreyer resolutions and Betti tables.

Module elements are handled internally as dictionaries
``{(component, exponents): coefficient}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .groebner import Ideal, minimal_generators
from .linalg import Echelon, solve
from .ring import (
    Polynomial,
    PolyRing,
    graded_piece_basis,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class ResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module sum S(-a); ``twists`` lists the degrees a of the basis."""

    ring: PolyRing
    twists: tuple

    @property
    def rank(self):
        return len(self.twists)


class ComplexMap:
    """Homogeneous map between graded free modules, stored sparsely.

    ``entries[(i, j)]`` is the (row i, column j) entry; rows index the
    target basis, columns the source basis.
    """

    def __init__(self, ring, target_twists, source_twists, entries=None):
        self.ring = ring
        self.target_twists = tuple(target_twists)
        self.source_twists = tuple(source_twists)
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @property
    def source(self):
        return GradedFreeModule(self.ring, self.source_twists)

    @property
    def target(self):
        return GradedFreeModule(self.ring, self.target_twists)

    @property
    def nrows(self):
        return len(self.target_twists)

    @property
    def ncols(self):
        return len(self.source_twists)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @classmethod
    def from_rows(cls, ring, rows, target_twists=None, source_twists=None):
        """Build from a dense list of rows; twists are inferred when omitted."""
        rows = [[ring(x) if isinstance(x, str) else (x if isinstance(x, Polynomial) else ring.const(x)) for x in r] for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        entries = {(i, j): rows[i][j] for i in range(nr) for j in range(nc) if rows[i][j]}
        if target_twists is None and source_twists is None:
            raise ValueError("give at least one set of twists")
        if source_twists is None:
            source_twists = []
            for j in range(nc):
                col = [(i, p) for (i, jj), p in entries.items() if jj == j]
                if not col:
                    raise ValueError(f"cannot infer twist of zero column {j}")
                i, p = col[0]
                source_twists.append(target_twists[i] + p.homogeneous_degree())
        if target_twists is None:
            target_twists = []
            for i in range(nr):
                row = [(j, p) for (ii, j), p in entries.items() if ii == i]
                if not row:
                    raise ValueError(f"cannot infer twist of zero row {i}")
                j, p = row[0]
                target_twists.append(source_twists[j] - p.homogeneous_degree())
        return cls(ring, target_twists, source_twists, entries)

    @classmethod
    def from_columns(cls, ring, target_twists, source_twists, columns):
        entries = {}
        for j, col in enumerate(columns):
            for i, p in col.items():
                if p:
                    entries[(i, j)] = p
        return cls(ring, target_twists, source_twists, entries)

    def __getitem__(self, ij):
        return self.entries.get(ij) or self.ring.zero()

    def column(self, j):
        return {i: p for (i, jj), p in self.entries.items() if jj == j}

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for (i, j), p in self.entries.items():
            cols[j][i] = p
        return cols

    def rows(self):
        rows = [dict() for _ in range(self.nrows)]
        for (i, j), p in self.entries.items():
            rows[i][j] = p
        return rows

    def dense(self):
        z = self.ring.zero()
        return [[self.entries.get((i, j), z) for j in range(self.ncols)] for i in range(self.nrows)]

    def transpose(self, twist=0):
        """Transpose, viewed as a map of duals twisted by ``twist``.

        The dual of S(-a) twisted into S(-twist) is S(-(twist - a)).
        """
        return ComplexMap(
            self.ring,
            [twist - a for a in self.source_twists],
            [twist - a for a in self.target_twists],
            {(j, i): p for (i, j), p in self.entries.items()},
        )

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        rows = self.rows()
        ocols = other.columns()
        entries = {}
        for i, row in enumerate(rows):
            if not row:
                continue
            for j, col in enumerate(ocols):
                acc = None
                for k, p in row.items():
                    q = col.get(k)
                    if q is not None:
                        acc = p * q if acc is None else acc + p * q
                if acc:
                    entries[(i, j)] = acc
        return ComplexMap(self.ring, self.target_twists, other.source_twists, entries)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return ComplexMap(self.ring, self.target_twists, self.source_twists, {k: v * c for k, v in self.entries.items()})

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        entries = dict(self.entries)
        for k, v in other.entries.items():
            entries[k] = entries[k] + v if k in entries else v
        return ComplexMap(self.ring, self.target_twists, self.source_twists, entries)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, ComplexMap):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def same_entries(self, other):
        return self.shape == other.shape and self.entries == other.entries

    def is_homogeneous(self):
        for (i, j), p in self.entries.items():
            if p.homogeneous_degree() != self.source_twists[j] - self.target_twists[i]:
                return False
        return True

    def has_unit_entries(self):
        return any(p.is_constant() for p in self.entries.values())

    def is_linear(self):
        return all(p.homogeneous_degree() == 1 for p in self.entries.values())

    def is_constant(self):
        return all(p.is_constant() for p in self.entries.values())

    def submatrix(self, rows, cols):
        rpos = {r: k for k, r in enumerate(rows)}
        cpos = {c: k for k, c in enumerate(cols)}
        entries = {(rpos[i], cpos[j]): p for (i, j), p in self.entries.items() if i in rpos and j in cpos}
        return ComplexMap(
            self.ring, [self.target_twists[r] for r in rows], [self.source_twists[c] for c in cols], entries
        )

    def constant_matrix(self):
        """Dense rational matrix of a map with constant entries."""
        if not self.is_constant():
            raise ValueError("map has non-constant entries")
        return [[self[(i, j)].constant_coeff() for j in range(self.ncols)] for i in range(self.nrows)]

    @classmethod
    def from_constant(cls, ring, mat, target_twists, source_twists):
        entries = {}
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                if x:
                    entries[(i, j)] = ring.const(x)
        return cls(ring, target_twists, source_twists, entries)

    @classmethod
    def identity(cls, ring, twists):
        return cls(ring, twists, twists, {(i, i): ring.one() for i in range(len(twists))})

    def __repr__(self):
        return f"ComplexMap({self.nrows}x{self.ncols})"


class Complex:
    """Chain complex F_0 <- F_1 <- ... <- F_len with maps d_1..d_len."""

    def __init__(self, ring, modules, maps):
        self.ring = ring
        self.modules = [tuple(t) for t in modules]
        self.maps = list(maps)
        if len(self.maps) != len(self.modules) - 1:
            raise ValueError("need one map fewer than modules")
        for i, d in enumerate(self.maps, start=1):
            if d.target_twists != self.modules[i - 1] or d.source_twists != self.modules[i]:
                raise ValueError(f"map d_{i} does not match module twists")

    @property
    def length(self):
        return len(self.maps)

    def d(self, i):
        return self.maps[i - 1]

    def twists(self, i):
        return self.modules[i]

    def ranks(self):
        return [len(t) for t in self.modules]

    def is_complex(self):
        return all((self.d(i) @ self.d(i + 1)).is_zero() for i in range(1, self.length))

    def is_minimal(self):
        return not any(d.has_unit_entries() for d in self.maps)

    def trimmed(self):
        """Drop trailing zero modules."""
        mods = list(self.modules)
        maps = list(self.maps)
        while len(mods) > 1 and not mods[-1]:
            mods.pop()
            maps.pop()
        return Complex(self.ring, mods, maps)

    def __repr__(self):
        return f"Complex(ranks={self.ranks()})"


# graded linear algebra --------------------------------------------------------


def _column_images(M, i, deg):
    """Images of m * e_i for all monomials m of degree ``deg``."""
    col = M.column(i)
    out = []
    for mono in graded_piece_basis(M.ring, deg):
        vec = {}
        for r, p in col.items():
            for m, c in p.as_dict().items():
                vec[(r, mono_mul(m, mono))] = c
        out.append((mono, vec))
    return out


def graded_solve(M, rhs_list, degree):
    """Solve M x = v for homogeneous v of (twisted) degree ``degree``.

    Each right-hand side is a dict ``{row: Polynomial}``.  Returns dicts
    ``{column: Polynomial}`` (or None when v is not in the image).
    """
    ring = M.ring
    index = {}
    cols = []
    labels = []
    for i, a in enumerate(M.source_twists):
        if degree - a < 0:
            continue
        for mono, vec in _column_images(M, i, degree - a):
            cols.append({index.setdefault(k, len(index)): c for k, c in vec.items()})
            labels.append((i, mono))
    rhs_vecs = []
    for v in rhs_list:
        vec = {}
        bad = False
        for r, p in v.items():
            for m, c in p.as_dict().items():
                k = (r, m)
                if k not in index:
                    bad = True
                    break
                vec[index[k]] = c
            if bad:
                break
        rhs_vecs.append(None if bad else vec)
    todo = [v for v in rhs_vecs if v is not None]
    sols = iter(solve(cols, todo)) if todo else iter(())
    out = []
    for v in rhs_vecs:
        if v is None:
            out.append(None)
            continue
        x = next(sols)
        if x is None:
            out.append(None)
            continue
        acc = {}
        for k, c in x.items():
            i, mono = labels[k]
            acc.setdefault(i, []).append((mono, c))
        out.append({i: Polynomial.from_terms(ring, terms) for i, terms in acc.items()})
    return out


def graded_inverse(A):
    """Inverse of an invertible homogeneous map between free modules."""
    if A.nrows != A.ncols:
        raise ResolutionError("only square maps can be inverted")
    cols = [None] * A.nrows
    by_deg = {}
    for j, a in enumerate(A.target_twists):
        by_deg.setdefault(a, []).append(j)
    for deg, js in by_deg.items():
        rhs = [{j: A.ring.one()} for j in js]
        for j, x in zip(js, graded_solve(A, rhs, deg)):
            if x is None:
                raise ResolutionError("map is not invertible")
            cols[j] = x
    inv = ComplexMap.from_columns(A.ring, A.source_twists, A.target_twists, cols)
    if not (A @ inv).same_entries(ComplexMap.identity(A.ring, A.target_twists)):
        raise ResolutionError("map is not invertible")
    return inv


def constant_transition(A, B):
    """Constant matrix C with A @ C == B (same target basis), or None."""
    if A.nrows != B.nrows:
        raise ValueError("row counts differ")
    ring = A.ring
    index = {}
    acols = []
    for col in A.columns():
        acols.append({index.setdefault((r, m), len(index)): c for r, p in col.items() for m, c in p.as_dict().items()})
    rhs = []
    for col in B.columns():
        vec = {}
        for r, p in col.items():
            for m, c in p.as_dict().items():
                if (r, m) not in index:
                    return None
                vec[index[(r, m)]] = c
        rhs.append(vec)
    sols = solve(acols, rhs)
    if any(s is None for s in sols):
        return None
    mat = [[Fraction(0)] * B.ncols for _ in range(A.ncols)]
    for j, s in enumerate(sols):
        for i, c in s.items():
            mat[i][j] = c
    C = ComplexMap.from_constant(ring, mat, A.source_twists, B.source_twists)
    if not (A @ C).same_entries(B):
        return None
    return C


# module Groebner machinery ------------------------------------------------------


def _mvec_from_column(col):
    return {(r, m): c for r, p in col.items() for m, c in p.as_dict().items()}


def _mvec_to_column(ring, vec):
    acc = {}
    for (r, m), c in vec.items():
        acc.setdefault(r, []).append((m, c))
    return {r: Polynomial.from_terms(ring, terms) for r, terms in acc.items()}


def _mvec_axpy(acc, vec, mono, c):
    """acc += c * mono * vec (in place)."""
    for (r, m), v in vec.items():
        k = (r, mono_mul(m, mono))
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class _Level:
    """Ordering data of one free module in a Schreyer resolution."""

    def __init__(self, ring, totals, chains):
        self.ring = ring
        self.totals = totals
        self.chains = chains
        self._neg = [tuple(-c for c in ch) for ch in chains]

    def key(self, term):
        r, m = term
        return (self.ring.key(mono_mul(m, self.totals[r])), self._neg[r])


def _top_reduce(vec, gens, lead, level):
    """Reduce ``vec`` to zero by elements with given leading terms.

    ``gens[l]`` is a module vector with leading term ``lead[l] = (comp, mono)``
    and coefficient 1.  Returns the quotient as ``{(l, mono): coeff}``.
    The remainder must vanish (caller guarantees a Groebner basis).
    """
    by_comp = {}
    for l, (comp, mono) in enumerate(lead):
        by_comp.setdefault(comp, []).append((l, mono))
    quot = {}
    vec = dict(vec)
    key = level.key
    while vec:
        term = max(vec, key=key)
        c = vec[term]
        comp, mono = term
        for l, lm in by_comp.get(comp, ()):
            if mono_divides(lm, mono):
                q = mono_div(mono, lm)
                quot[(l, q)] = quot.get((l, q), 0) + c
                _mvec_axpy(vec, gens[l], q, -c)
                break
        else:
            raise ResolutionError("S-pair did not reduce to zero")
    return quot


def _schreyer_syzygies(ring, gens, lead, level):
    """Generators of the syzygies of a Groebner basis ``gens`` (Schreyer).

    Returns (syzygies, new_lead) where each syzygy is a module vector over
    the indices of ``gens``, sorted so that Schreyer's lex condition holds.
    Only pairs whose lcm quotient is minimal are formed.
    """
    syz = []
    by_comp = {}
    for l, (comp, mono) in enumerate(lead):
        by_comp.setdefault(comp, []).append(l)
    for comp, idx in by_comp.items():
        for a, i in enumerate(idx):
            mi = lead[i][1]
            cands = []
            for j in idx[a + 1 :]:
                mj = lead[j][1]
                cands.append((mono_div(mono_lcm(mi, mj), mi), j))
            kept = []
            for q, j in cands:
                if any(mono_divides(q2, q) and (q2 != q or j2 < j) for q2, j2 in cands if j2 != j):
                    continue
                kept.append((q, j))
            for q, j in kept:
                mj = lead[j][1]
                qj = mono_div(mono_lcm(mi, mj), mj)
                s = {}
                _mvec_axpy(s, gens[i], q, 1)
                _mvec_axpy(s, gens[j], qj, -1)
                quot = _top_reduce(s, gens, lead, level) if s else {}
                vec = {(i, q): Fraction(1)}
                vec[(j, qj)] = vec.get((j, qj), 0) - 1
                for (l, m), c in quot.items():
                    k = (l, m)
                    v = vec.get(k, 0) - c
                    if v:
                        vec[k] = v
                    else:
                        vec.pop(k, None)
                syz.append(((i, q), vec))
    syz.sort(key=lambda t: (t[0][0], tuple(-x for x in t[0][1])))
    return [v for _, v in syz], [lt for lt, _ in syz]


def schreyer_resolution(ideal, max_length=None):
    """Free (usually non-minimal) resolution of S/I by Schreyer's algorithm."""
    ring = ideal.ring
    n = ring.nvars
    if max_length is None:
        max_length = n
    G = ideal.groebner
    if not G.elements:
        return Complex(ring, [(0,)], [])
    if any(g.is_constant() for g in G.elements):
        raise ResolutionError("unit ideal has the zero module as quotient")
    # Schreyer's condition: within a component, leading monomials descending in lex
    gb = sorted(G.elements, key=lambda g: tuple(-x for x in g.leading_monomial()))
    zero = (0,) * n
    level = _Level(ring, [zero], [()])
    gens = [{(0, m): c for m, c in g.as_dict().items()} for g in gb]
    lead = [(0, g.leading_monomial()) for g in gb]
    modules = [(0,)]
    maps = []
    prev_twists = (0,)
    while gens and len(maps) < max_length:
        totals = [mono_mul(m, level.totals[c]) for c, m in lead]
        chains = [level.chains[c] + (l,) for l, (c, m) in enumerate(lead)]
        twists = tuple(sum(t) for t in totals)
        cols = [_mvec_to_column(ring, g) for g in gens]
        maps.append(ComplexMap.from_columns(ring, prev_twists, twists, cols))
        modules.append(twists)
        new_level = _Level(ring, totals, chains)
        if len(maps) == max_length:
            break
        gens, lead = _schreyer_syzygies(ring, gens, lead, level)
        level = new_level
        prev_twists = twists
    return Complex(ring, modules, maps)


def module_groebner(M):
    """Groebner basis of the column span of ``M`` with tracking.

    Uses a term-over-position order.  Returns (basis, lead, tracking) where
    ``tracking[l]`` expresses basis element l in the source basis of M.
    """
    ring = M.ring
    key_r = ring.key

    def key(term):
        r, m = term
        return (key_r(m), -r)

    basis, lead, track = [], [], []
    pairs = []

    def reduce_full(vec, tr):
        vec, tr = dict(vec), dict(tr)
        out = {}
        while vec:
            term = max(vec, key=key)
            c = vec[term]
            comp, mono = term
            for l, (lc, lm) in enumerate(lead):
                if lc == comp and mono_divides(lm, mono):
                    q = mono_div(mono, lm)
                    _mvec_axpy(vec, basis[l], q, -c)
                    _mvec_axpy(tr, track[l], q, -c)
                    break
            else:
                out[term] = c
                del vec[term]
        return out, tr

    def add(vec, tr):
        term = max(vec, key=key)
        c = vec[term]
        vec = {k: v / c for k, v in vec.items()}
        tr = {k: v / c for k, v in tr.items()}
        new = len(basis)
        for l in range(new):
            if lead[l][0] == term[0]:
                pairs.append((l, new))
        basis.append(vec)
        lead.append(term)
        track.append(tr)

    zero = (0,) * ring.nvars
    for j, col in enumerate(M.columns()):
        vec = _mvec_from_column(col)
        if not vec:
            continue
        vec, tr = reduce_full(vec, {(j, zero): Fraction(1)})
        if vec:
            add(vec, tr)
    while pairs:
        pairs.sort(key=lambda p: (sum(mono_lcm(lead[p[0]][1], lead[p[1]][1])), p))
        i, j = pairs.pop(0)
        mi, mj = lead[i][1], lead[j][1]
        lcm = mono_lcm(mi, mj)
        qi, qj = mono_div(lcm, mi), mono_div(lcm, mj)
        s, tr = {}, {}
        _mvec_axpy(s, basis[i], qi, 1)
        _mvec_axpy(s, basis[j], qj, -1)
        _mvec_axpy(tr, track[i], qi, 1)
        _mvec_axpy(tr, track[j], qj, -1)
        if not s:
            continue
        s, tr = reduce_full(s, tr)
        if s:
            add(s, tr)
    return basis, lead, track, key


def _syzygy_generators(M):
    """Homogeneous generators (as columns over M's source) of ker M."""
    ring = M.ring
    basis, lead, track, key = module_groebner(M)
    zero = (0,) * ring.nvars

    class _TOP:
        def key(self, term):
            return key(term)

    out = []
    # syzygies among the Groebner basis, pulled back to M's source
    by_comp = {}
    for l, (c, m) in enumerate(lead):
        by_comp.setdefault(c, []).append(l)
    for comp, idx in by_comp.items():
        for a, i in enumerate(idx):
            for j in idx[a + 1 :]:
                mi, mj = lead[i][1], lead[j][1]
                lcm = mono_lcm(mi, mj)
                qi, qj = mono_div(lcm, mi), mono_div(lcm, mj)
                s = {}
                _mvec_axpy(s, basis[i], qi, 1)
                _mvec_axpy(s, basis[j], qj, -1)
                quot = _top_reduce(s, basis, lead, _TOP()) if s else {}
                vec = {}
                _mvec_axpy(vec, track[i], qi, 1)
                _mvec_axpy(vec, track[j], qj, -1)
                for (l, m), c in quot.items():
                    _mvec_axpy(vec, track[l], m, -c)
                if vec:
                    out.append(vec)
    # each original column minus its expression through the basis
    for j, col in enumerate(M.columns()):
        v = _mvec_from_column(col)
        vec = {(j, zero): Fraction(1)}
        if v:
            quot = _top_reduce(v, basis, lead, _TOP())
            for (l, m), c in quot.items():
                _mvec_axpy(vec, track[l], m, -c)
        if vec:
            out.append(vec)
    return out


def _twisted_degree(vec, twists):
    degs = {twists[r] + sum(m) for (r, m) in vec}
    if len(degs) != 1:
        raise ResolutionError("inhomogeneous syzygy")
    return degs.pop()


def prune_generators(ring, twists, vectors):
    """Minimal subset generating the same graded submodule of sum S(-twists)."""
    items = [(_twisted_degree(v, twists), k, v) for k, v in enumerate(vectors) if v]
    items.sort(key=lambda t: (t[0], t[1]))
    kept = []
    k = 0
    while k < len(items):
        deg = items[k][0]
        ech = Echelon()
        index = {}

        def vec_index(v):
            return {index.setdefault(t, len(index)): c for t, c in v.items()}

        for kdeg, kv in kept:
            for mono in graded_piece_basis(ring, deg - kdeg):
                img = {}
                for (r, m), c in kv.items():
                    img[index.setdefault((r, mono_mul(m, mono)), len(index))] = c
                ech.add(img)
        while k < len(items) and items[k][0] == deg:
            v = items[k][2]
            if ech.add(vec_index(v)) is None:
                kept.append((deg, v))
            k += 1
    return kept


def syzygy_module(M):
    """Minimal homogeneous generators of the kernel of ``M``.

    ``M`` is a :class:`ComplexMap` or a list of homogeneous polynomials
    (taken as a 1-row map).  Returns a map whose columns generate ker M.
    """
    if not isinstance(M, ComplexMap):
        gens = list(M)
        ring = gens[0].ring
        M = ComplexMap(ring, (0,), [g.homogeneous_degree() for g in gens], {(0, j): g for j, g in enumerate(gens)})
    if not M.is_homogeneous():
        raise ResolutionError("syzygy_module needs a homogeneous map")
    vecs = _syzygy_generators(M)
    kept = prune_generators(M.ring, M.source_twists, vecs)
    cols = [_mvec_to_column(M.ring, v) for _, v in kept]
    S = ComplexMap.from_columns(M.ring, M.source_twists, [d for d, _ in kept], cols)
    assert (M @ S).is_zero()
    return S


# minimalization ------------------------------------------------------------------


def minimalize(C):
    """Cancel unit entries of a resolution to obtain a minimal one.

    A unit pivot u = d_i[r, c] is removed by the Schur complement
    d_i[r', c'] -= d_i[r', c] * d_i[r, c'] / u, after which row r and
    column c are deleted from d_i, column r from d_{i-1} and row c from
    d_{i+1}.  Bases are then ordered by twist, ties by original index.
    """
    ring = C.ring
    L = C.length
    alive = [list(range(len(t))) for t in C.modules]
    rows = [None] + [dict() for _ in range(L)]  # rows[i][r] = {c: poly}
    cols = [None] + [dict() for _ in range(L)]
    for i in range(1, L + 1):
        for (r, c), p in C.d(i).entries.items():
            rows[i].setdefault(r, {})[c] = p
            cols[i].setdefault(c, {})[r] = p
    dead = [set() for _ in range(L + 1)]

    def kill(i, b):
        # basis element b of F_i disappears
        dead[i].add(b)
        if i >= 1:
            for r in list(cols[i].get(b, {})):
                rows[i][r].pop(b, None)
            cols[i].pop(b, None)
        if i + 1 <= L:
            for c in list(rows[i + 1].get(b, {})):
                cols[i + 1][c].pop(b, None)
            rows[i + 1].pop(b, None)

    for i in range(2, L + 1):
        tt, st = C.modules[i - 1], C.modules[i]
        while True:
            best = None
            for c, col in cols[i].items():
                for r, p in col.items():
                    if tt[r] == st[c] and p:
                        cost = (len(col) * len(rows[i].get(r, ())), c, r)
                        if best is None or cost < best:
                            best = cost
            if best is None:
                break
            _, c, r = best
            u = rows[i][r][c].constant_coeff()
            pivot_row = {cc: p for cc, p in rows[i][r].items() if cc != c}
            pivot_col = {rr: p for rr, p in cols[i][c].items() if rr != r}
            for rr, a in pivot_col.items():
                f = a * (1 / u)
                for cc, b in pivot_row.items():
                    old = rows[i][rr].get(cc)
                    new = (old - f * b) if old is not None else -(f * b)
                    if new:
                        rows[i][rr][cc] = new
                        cols[i].setdefault(cc, {})[rr] = new
                    else:
                        rows[i][rr].pop(cc, None)
                        cols[i][cc].pop(rr, None)
            kill(i - 1, r)
            kill(i, c)

    modules, maps = [], []
    order = []
    for i in range(L + 1):
        idx = [b for b in alive[i] if b not in dead[i]]
        idx.sort(key=lambda b: (C.modules[i][b], b))
        order.append(idx)
        modules.append(tuple(C.modules[i][b] for b in idx))
    for i in range(1, L + 1):
        rpos = {b: k for k, b in enumerate(order[i - 1])}
        cpos = {b: k for k, b in enumerate(order[i])}
        entries = {}
        for r, row in rows[i].items():
            if r not in rpos:
                continue
            for c, p in row.items():
                if c in cpos and p:
                    entries[(rpos[r], cpos[c])] = p
        maps.append(ComplexMap(ring, modules[i - 1], modules[i], entries))
    return Complex(ring, modules, maps).trimmed()


def change_first_basis(C, gens):
    """Re-express a minimal resolution so that d_1 is the row ``gens``.

    ``gens`` must minimally generate the same ideal as d_1.
    """
    ring = C.ring
    d1 = C.d(1)
    new_twists = tuple(g.homogeneous_degree() for g in gens)
    if sorted(new_twists) != sorted(C.modules[1]):
        raise ResolutionError("generators are not a minimal generating set")
    rhs = {}
    for j, g in enumerate(gens):
        rhs.setdefault(new_twists[j], []).append(j)
    cols = [None] * len(gens)
    for deg, js in rhs.items():
        sols = graded_solve(d1, [{0: gens[j]} for j in js], deg)
        for j, x in zip(js, sols):
            if x is None:
                raise ResolutionError("generator not in the ideal")
            cols[j] = x
    A = ComplexMap.from_columns(ring, C.modules[1], new_twists, cols)
    B = graded_inverse(A)
    new_d1 = ComplexMap(ring, (0,), new_twists, {(0, j): g for j, g in enumerate(gens)})
    maps = [new_d1]
    modules = [C.modules[0], new_twists] + C.modules[2:]
    if C.length >= 2:
        d2 = B @ C.d(2)
        maps.append(d2)
        maps.extend(C.maps[2:])
    return Complex(ring, modules, maps)


def free_resolution(ideal, max_length=None, minimal=True):
    """Minimal graded free resolution of S/I with d_1 = minimal generators.

    The generators kept for d_1 are the given ones (a minimal subset chosen
    greedily when the given list is redundant).
    """
    if not ideal.is_homogeneous:
        raise ResolutionError("free_resolution needs a homogeneous ideal")
    C = schreyer_resolution(ideal, max_length)
    if not minimal:
        return C
    C = minimalize(C)
    if C.length >= 1:
        gens = minimal_generators(ideal)
        gens.sort(key=lambda g: g.homogeneous_degree())
        C = change_first_basis(C, gens)
    return C


# Betti tables --------------------------------------------------------------------


class BettiTable(dict):
    """Mapping (p, j) -> beta_{p,j}; only nonzero entries stored."""

    def entry(self, p, j):
        return self.get((p, j), 0)

    def total(self, p):
        return sum(v for (pp, _), v in self.items() if pp == p)

    @property
    def length(self):
        return max((p for p, _ in self), default=0)

    def ranks(self):
        return [self.total(p) for p in range(self.length + 1)]

    def linear_strand(self, p):
        """beta_{p,p+1}: the entry in row 1 of the Macaulay display."""
        return self.entry(p, p + 1)

    def to_text(self):
        """Macaulay-style display: columns p, rows j - p."""
        if not self:
            return "total:\n"
        P = self.length
        qs = sorted({j - p for p, j in self})
        cells = [["total:"] + [str(self.total(p)) for p in range(P + 1)]]
        for q in range(qs[0], qs[-1] + 1):
            row = [f"{q}:"]
            for p in range(P + 1):
                v = self.entry(p, p + q)
                row.append(str(v) if v else ".")
            cells.append(row)
        w0 = max(len(r[0]) for r in cells)
        w = max(len(x) for r in cells for x in r[1:])
        header = " " * w0 + "".join(f" {p:>{w}}" for p in range(P + 1))
        lines = [header]
        for r in cells:
            lines.append(f"{r[0]:>{w0}}" + "".join(f" {x:>{w}}" for x in r[1:]))
        return "\n".join(lines) + "\n"

    def to_kv(self):
        return "".join(f"betti.{p}.{j} = {v}\n" for (p, j), v in sorted(self.items()))


def betti_table(C):
    """Graded Betti numbers of a minimal complex."""
    if not C.is_minimal():
        raise ResolutionError("betti_table needs a minimal complex")
    table = BettiTable()
    for p, twists in enumerate(C.modules):
        for a in twists:
            table[(p, a)] = table.get((p, a), 0) + 1
    return table


def hoa_betti(e, p):
    """beta_{p,p+1} of a del Pezzo variety of codimension e (Hoa's formula)."""
    if e < 3 or not 1 <= p <= e - 1:
        raise ValueError("need e >= 3 and 1 <= p <= e - 1")
    return p * comb(e + 1, p + 1) - comb(e, p - 1)
