"""Koszul complexes on the linear forms and their cohomology.

A chain in wedge^p S_1 (x) M_q is stored as ``{index tuple: Polynomial}``;
M is S, the coordinate ring S/I (context ``"SX"``) or the ideal I
(context ``"IX"``).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

from .exterior import _sort_sign
from .groebner import Ideal, graded_piece, normal_form, standard_monomials
from .linalg import Echelon, nullspace
from .ring import graded_piece_basis

CONTEXTS = ("S", "SX", "IX")


class KoszulError(ValueError):
    pass


class KoszulChain:
    """Element of wedge^p S_1 (x) M_q."""

    __slots__ = ("ring", "p", "q", "terms", "context", "ideal")

    def __init__(self, ring, p, q, terms=None, context="S", ideal=None):
        if context not in CONTEXTS:
            raise KoszulError(f"unknown context {context!r}")
        if context == "SX" and ideal is None:
            raise KoszulError("context SX needs the ideal")
        self.ring = ring
        self.p = p
        self.q = q
        self.context = context
        self.ideal = ideal
        clean = {}
        for idx, f in (terms or {}).items():
            if len(idx) != p or list(idx) != sorted(set(idx)):
                raise KoszulError(f"wedge index {idx} is not strictly increasing of length {p}")
            if context == "SX":
                f = normal_form(f, ideal)
            if not f:
                continue
            if f.homogeneous_degree() != q:
                raise KoszulError(f"coefficient {f} is not of degree {q}")
            clean[tuple(idx)] = f
        self.terms = clean

    def with_terms(self, terms, p=None, q=None):
        return KoszulChain(self.ring, self.p if p is None else p, self.q if q is None else q, terms, self.context, self.ideal)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, KoszulChain):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return (self.p, self.q, self.terms) == (other.p, other.q, other.terms)

    def __hash__(self):
        return hash((self.p, self.q, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for idx, f in other.terms.items():
            out[idx] = out[idx] + f if idx in out else f
        return self.with_terms(out)

    def __neg__(self):
        return self.with_terms({i: -f for i, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return self.with_terms({i: f * c for i, f in self.terms.items()})

    __rmul__ = __mul__

    def coefficients(self):
        """The polynomial coefficients, in increasing wedge order."""
        return [self.terms[i] for i in sorted(self.terms)]

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for idx in sorted(self.terms):
            word = "^".join(names[i] for i in idx) if idx else "1"
            parts.append(f"{word} (x) ({self.terms[idx]})")
        return " + ".join(parts)

    def __repr__(self):
        return f"KoszulChain(p={self.p}, q={self.q}, {self})"


def koszul_differential(c):
    """delta(x_I (x) f) = sum_j (-1)^(j-1) x_{I - i_j} (x) x_{i_j} f."""
    if c.p < 1:
        raise KoszulError("the differential needs p >= 1")
    ring = c.ring
    out = {}
    for idx, f in c.terms.items():
        for j, i in enumerate(idx):
            rest = idx[:j] + idx[j + 1 :]
            g = ring.var(i) * f
            if j % 2:
                g = -g
            out[rest] = out[rest] + g if rest in out else g
    return c.with_terms(out, p=c.p - 1, q=c.q + 1)


def is_koszul_cycle(c):
    if c.p == 0:
        return True
    return not koszul_differential(c)


def koszul_cup_product(a, b):
    """Representative-level product of two cycles: wedge and multiply."""
    if a.context != b.context or a.ring != b.ring:
        raise KoszulError("chains live in different contexts")
    if a.ideal is not None and b.ideal is not None and a.ideal.groebner != b.ideal.groebner:
        raise KoszulError("chains are taken modulo different ideals")
    if not (is_koszul_cycle(a) and is_koszul_cycle(b)):
        raise KoszulError("cup product needs cycles")
    out = {}
    for ia, fa in a.terms.items():
        for ib, fb in b.terms.items():
            sign, idx = _sort_sign(ia + ib)
            if not sign:
                continue
            g = fa * fb if sign > 0 else -(fa * fb)
            out[idx] = out[idx] + g if idx in out else g
    ctx = "SX" if a.context == "SX" else "S" if a.context == "S" else "IX"
    return KoszulChain(a.ring, a.p + b.p, a.q + b.q, out, ctx, a.ideal if a.ideal is not None else b.ideal)


# cohomology ---------------------------------------------------------------------------


class _Graded:
    """Coordinates on M_q for M = S, S/I or I."""

    def __init__(self, ring, ideal, module):
        self.ring = ring
        self.ideal = ideal
        self.module = module
        if module == "SX":
            self.G = ideal.groebner

    @lru_cache(maxsize=None)
    def basis(self, q):
        """Basis of M_q: monomials, standard monomials or echelon rows of I_q."""
        ring = self.ring
        if q < 0:
            return []
        if self.module == "S":
            return [ring.monomial(m) for m in graded_piece_basis(ring, q)]
        if self.module == "SX":
            return [ring.monomial(m) for m in standard_monomials(self.G, q)]
        return graded_piece(self.ideal, q)

    @lru_cache(maxsize=None)
    def _pivots(self, q):
        # for echelon rows of I_q the leading monomial is the pivot
        return {b.leading_monomial(): k for k, b in enumerate(self.basis(q))}

    def coords(self, f, q):
        """Coordinates of the degree-q element f of M (reduced if needed)."""
        piv = self._pivots(q)
        if self.module == "SX":
            f = normal_form(f, self.G)
        out = {}
        for m, c in f.as_dict().items():
            k = piv.get(m)
            if k is not None:
                out[k] = c
            elif self.module != "IX":
                raise KoszulError("monomial outside the basis")
        return out

    @lru_cache(maxsize=None)
    def mult_table(self, q):
        """coords of x_i * b_k in M_{q+1}, indexed [k][i]."""
        ring = self.ring
        return [[self.coords(ring.var(i) * b, q + 1) for i in range(ring.nvars)] for b in self.basis(q)]


@lru_cache(maxsize=None)
def _wedge_index(n, p):
    return {idx: k for k, idx in enumerate(combinations(range(n), p))}


def _differential_rank(M, p, q):
    """Rank of delta: wedge^p (x) M_q -> wedge^(p-1) (x) M_{q+1}."""
    n = M.ring.nvars
    if p < 1 or p > n or q < 0:
        return 0
    basis = M.basis(q)
    if not basis:
        return 0
    dim_next = len(M.basis(q + 1))
    if not dim_next:
        return 0
    table = M.mult_table(q)
    target = _wedge_index(n, p - 1)
    ech = Echelon()
    for idx in combinations(range(n), p):
        rests = [(idx[:j] + idx[j + 1 :], i, -1 if j % 2 else 1) for j, i in enumerate(idx)]
        for k in range(len(basis)):
            vec = {}
            for rest, i, s in rests:
                off = target[rest] * dim_next
                for t, c in table[k][i].items():
                    vec[off + t] = s * c
            if vec:
                ech.add(vec)
    return ech.rank


class KoszulCohomology:
    """Koszul cohomology of M = S, S/I or I with cached differential ranks."""

    def __init__(self, ideal, module="SX"):
        if module not in CONTEXTS:
            raise KoszulError(f"unknown module {module!r}")
        if module != "S" and not ideal.is_homogeneous:
            raise KoszulError("needs a homogeneous ideal")
        self.ideal = ideal
        self.ring = ideal.ring
        self.module = module
        self._M = _Graded(self.ring, ideal, module)
        self._ranks = {}

    def rank(self, p, q):
        if (p, q) not in self._ranks:
            self._ranks[(p, q)] = _differential_rank(self._M, p, q)
        return self._ranks[(p, q)]

    def graded_dim(self, q):
        return len(self._M.basis(q)) if q >= 0 else 0

    def dim(self, p, q):
        """dim K_{p,q}(M, S_1) as the middle homology of the three-term complex."""
        n = self.ring.nvars
        if q < 0 or p < 0 or p > n:
            return 0
        total = comb(n, p) * self.graded_dim(q)
        if not total:
            return 0
        return total - self.rank(p, q) - self.rank(p + 1, q - 1)


def koszul_cohomology_dim(ideal, p, q, module="SX"):
    """dim K_{p,q}(M, S_1) for M = S/I (``"SX"``), I (``"IX"``) or S."""
    return KoszulCohomology(ideal, module).dim(p, q)


def first_cycle(ideal, p, q, module="SX"):
    """A cycle representing a nonzero class of K_{p,q}, or None.

    Takes the kernel of delta on wedge^p (x) M_q in echelon order and
    returns the first kernel vector that is not a boundary.
    """
    K = KoszulCohomology(ideal, module)
    if not K.dim(p, q):
        return None
    M = K._M
    ring = ideal.ring
    n = ring.nvars
    dim_q = len(M.basis(q))
    widx = _wedge_index(n, p)
    boundaries = Echelon()
    for idx in combinations(range(n), p + 1):
        for b in M.basis(q - 1):
            d = koszul_differential(KoszulChain(ring, p + 1, q - 1, {idx: b}, module, ideal))
            boundaries.add(_chain_coords(M, d, widx, dim_q))
    chains = [KoszulChain(ring, p, q, {idx: b}, module, ideal) for idx in combinations(range(n), p) for b in M.basis(q)]
    if p:
        target = _wedge_index(n, p - 1)
        dim_next = len(M.basis(q + 1))
        kernel = nullspace([_chain_coords(M, koszul_differential(c), target, dim_next) for c in chains])
    else:
        kernel = [{k: 1} for k in range(len(chains))]
    for vec in kernel:
        ch = KoszulChain(ring, p, q, {}, module, ideal)
        for k, c in sorted(vec.items()):
            ch = ch + chains[k] * c
        if not boundaries.contains(_chain_coords(M, ch, widx, dim_q)):
            return ch
    return None


def _chain_coords(M, c, widx, dim_q):
    vec = {}
    for idx, f in c.terms.items():
        off = widx[idx] * dim_q
        for t, v in M.coords(f, c.q).items():
            vec[off + t] = v
    return vec


def chain_is_boundary(c):
    """True when the cycle c is a Koszul boundary (so zero in cohomology)."""
    ideal = c.ideal
    if ideal is None:
        ideal = Ideal(c.ring, [])
    M = _Graded(c.ring, ideal, c.context)
    n = c.ring.nvars
    widx = _wedge_index(n, c.p)
    dim_q = len(M.basis(c.q))
    ech = Echelon()
    for idx in combinations(range(n), c.p + 1):
        for b in M.basis(c.q - 1):
            d = koszul_differential(KoszulChain(c.ring, c.p + 1, c.q - 1, {idx: b}, c.context, c.ideal))
            ech.add(_chain_coords(M, d, widx, dim_q))
    return ech.contains(_chain_coords(M, c, widx, dim_q))
