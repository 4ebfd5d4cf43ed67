"""Exterior powers of the space of linear forms and wedge-composed matrices.

An element of the k-th exterior power is a dict ``{(i1 < ... < ik): coeff}``
over the variable basis; the sign of any reordering is absorbed into the
coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd

from .linalg import solve
from .ring import Polynomial, format_coeff


class ExteriorError(ValueError):
    pass


def _sort_sign(idx):
    """Sort an index tuple; return (sign, sorted) or (0, None) on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort counting transpositions
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    return sign, tuple(idx)


class ExteriorElement:
    """Homogeneous element of the k-th exterior power of the linear forms."""

    __slots__ = ("ring", "k", "terms")

    def __init__(self, ring, k, terms=None):
        self.ring = ring
        self.k = k
        clean = {}
        for idx, c in (terms or {}).items():
            if c:
                if len(idx) != k:
                    raise ExteriorError("index tuple of wrong length")
                clean[tuple(idx)] = Fraction(c)
        self.terms = clean

    @classmethod
    def zero(cls, ring, k):
        return cls(ring, k, {})

    @classmethod
    def from_indices(cls, ring, idx, coeff=1):
        sign, srt = _sort_sign(idx)
        if not sign:
            return cls(ring, len(idx), {})
        return cls(ring, len(idx), {srt: sign * Fraction(coeff)})

    @classmethod
    def from_linear(cls, p):
        """Embed a linear form (or zero) as a degree-1 element."""
        if not p:
            return cls(p.ring, 1, {})
        return cls(p.ring, 1, {(i,): c for i, c in enumerate(p.linear_coeffs()) if c})

    @classmethod
    def one(cls, ring, c=1):
        return cls(ring, 0, {(): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, ExteriorElement):
            if not self.terms and not other.terms:
                return True
            return self.k == other.k and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __add__(self, other):
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.k != self.k:
            raise ExteriorError("cannot add elements of different degrees")
        out = dict(self.terms)
        for idx, c in other.terms.items():
            s = out.get(idx, 0) + c
            if s:
                out[idx] = s
            else:
                del out[idx]
        return ExteriorElement(self.ring, self.k, out)

    def __neg__(self):
        return ExteriorElement(self.ring, self.k, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return ExteriorElement(self.ring, self.k, {i: v * c for i, v in self.terms.items()})

    __rmul__ = __mul__

    def wedge(self, other):
        return wedge(self, other)

    def __xor__(self, other):
        return wedge(self, other)

    def content(self):
        """gcd of the coefficients (as a positive rational)."""
        return _content(self.terms.values())

    def variables(self):
        return sorted({i for idx in self.terms for i in idx})

    def contract(self, idx):
        """Interior product by the dual basis covector of the sorted tuple ``idx``.

        Contracts from the left: iota_J(x_J ^ x_K) = x_K.
        """
        out = {}
        J = set(idx)
        for t, c in self.terms.items():
            if not J.issubset(t):
                continue
            rest = tuple(i for i in t if i not in J)
            sign, _ = _sort_sign(tuple(idx) + rest)
            # t = sign * (idx ^ rest) as t is sorted and (idx + rest) sorts to t
            out[rest] = out.get(rest, 0) + sign * c
        return ExteriorElement(self.ring, self.k - len(idx), out)

    def __str__(self):
        return format_exterior(self)

    def __repr__(self):
        return f"ExteriorElement({format_exterior(self)!r})"


def _content(values):
    vals = [Fraction(v) for v in values if v]
    if not vals:
        return Fraction(0)
    num = reduce(gcd, (v.numerator for v in vals))
    den = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in vals))
    return Fraction(num, den)


def wedge(a, b):
    """Graded-commutative product of two exterior elements."""
    if a.ring != b.ring:
        raise ExteriorError("elements from different rings")
    out = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            sign, srt = _sort_sign(ia + ib)
            if not sign:
                continue
            s = out.get(srt, 0) + sign * ca * cb
            if s:
                out[srt] = s
            else:
                out.pop(srt, None)
    return ExteriorElement(a.ring, a.k + b.k, out)


def format_exterior(x):
    if not x.terms:
        return "0"
    names = x.ring.variables
    parts = []
    for n, (idx, c) in enumerate(sorted(x.terms.items())):
        word = "^".join(names[i] for i in idx) if idx else "1"
        a = abs(c)
        body = word if (a == 1 and idx) else f"{format_coeff(a)}*{word}" if idx else format_coeff(a)
        if n == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def parse_exterior(text, ring, k=None):
    """Parse ``[+-] [coeff*] xi^xj^... (+|-) ...``; ``0`` is the zero element."""
    text = text.strip()
    if text in ("0", ".", ""):
        return ExteriorElement(ring, k if k is not None else 0, {})
    import re

    out = None
    for m in re.finditer(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([A-Za-z_][A-Za-z0-9_]*(?:\s*\^\s*[A-Za-z_][A-Za-z0-9_]*)*)|(\S)", text):
        if m.group(4):
            raise ExteriorError(f"cannot parse exterior element {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        names = [s.strip() for s in m.group(3).split("^")]
        idx = tuple(ring.index(n) for n in names)
        term = ExteriorElement.from_indices(ring, idx, sign * coeff)
        if out is None:
            out = ExteriorElement(ring, len(idx), {})
        out = out + term
    if out is None:
        raise ExteriorError(f"cannot parse exterior element {text!r}")
    if k is not None and out.terms and out.k != k:
        raise ExteriorError("unexpected exterior degree")
    return out


class ExteriorMatrix:
    """Matrix whose entries all lie in the same exterior power."""

    def __init__(self, ring, k, rows):
        self.ring = ring
        self.k = k
        self.rows = [list(r) for r in rows]
        for r in self.rows:
            for x in r:
                if x.terms and x.k != k:
                    raise ExteriorError("entries of mixed exterior degree")
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self):
        return ExteriorMatrix(self.ring, self.k, [list(c) for c in zip(*self.rows)])

    def __eq__(self, other):
        if not isinstance(other, ExteriorMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return ExteriorMatrix(self.ring, self.k, [[x * c for x in r] for r in self.rows])

    def is_zero(self):
        return not any(x.terms for r in self.rows for x in r)

    def content(self):
        return _content(c for r in self.rows for x in r for c in x.terms.values())

    def primitive_part(self):
        c = self.content()
        if not c:
            return self
        return self.scale(1 / c)

    def times_constant(self, mat):
        """Right multiplication by a constant rational matrix."""
        ncols = len(mat[0]) if mat else 0
        rows = []
        for r in self.rows:
            row = []
            for j in range(ncols):
                acc = ExteriorElement.zero(self.ring, self.k)
                for l, x in enumerate(r):
                    c = mat[l][j]
                    if c and x.terms:
                        acc = acc + x * c
                row.append(acc)
            rows.append(row)
        return ExteriorMatrix(self.ring, self.k, rows)

    def constant_times(self, mat):
        """Left multiplication by a constant rational matrix."""
        return self.transpose().times_constant([list(c) for c in zip(*mat)]).transpose()

    def to_text(self, primitive=False):
        M = self.primitive_part() if primitive else self
        return "".join(", ".join(format_exterior(x) for x in r) + "\n" for r in M.rows)

    def to_kv(self, name="D", primitive=False):
        M = self.primitive_part() if primitive else self
        lines = []
        for i, r in enumerate(M.rows):
            for j, x in enumerate(r):
                lines.append(f"{name}.{i}.{j} = {format_exterior(x)}\n")
        return "".join(lines)

    @classmethod
    def from_text(cls, text, ring, k):
        rows = []
        for line in text.strip().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([parse_exterior(x, ring, k) for x in line.split(",")])
        return cls(ring, k, [[x if x.terms else ExteriorElement.zero(ring, k) for x in r] for r in rows])

    @classmethod
    def from_map(cls, M):
        """Degree-1 exterior matrix of a map with linear (or zero) entries."""
        rows = []
        for r in M.dense():
            row = []
            for p in r:
                if p and p.homogeneous_degree() != 1:
                    raise ExteriorError(f"non-linear entry {p}")
                row.append(ExteriorElement.from_linear(p))
            rows.append(row)
        return cls(M.ring, 1, rows)

    def __repr__(self):
        return f"ExteriorMatrix({self.nrows}x{self.ncols}, k={self.k})"


def wedge_matmul(A, B):
    """Matrix product with entry multiplication replaced by the wedge product."""
    if A.ncols != B.nrows:
        raise ExteriorError(f"dimension mismatch {A.shape} vs {B.shape}")
    bcols = [B.column(j) for j in range(B.ncols)]
    rows = []
    for r in A.rows:
        row = []
        for col in bcols:
            acc = ExteriorElement.zero(A.ring, A.k + B.k)
            for a, b in zip(r, col):
                if a.terms and b.terms:
                    acc = acc + wedge(a, b)
            row.append(acc)
        rows.append(row)
    return ExteriorMatrix(A.ring, A.k + B.k, rows)


def wedge_compose(maps):
    """D = d_2 ^ d_3 ^ ... for consecutive maps with linear entries.

    Checks composability, linearity and that consecutive polynomial
    products vanish.
    """
    if not maps:
        raise ExteriorError("need at least one map")
    for a, b in zip(maps, maps[1:]):
        if a.ncols != b.nrows:
            raise ExteriorError(f"dimension mismatch {a.shape} vs {b.shape}")
        if not (a @ b).is_zero():
            raise ExteriorError("consecutive maps do not compose to zero")
    D = ExteriorMatrix.from_map(maps[0])
    for M in maps[1:]:
        D = wedge_matmul(D, ExteriorMatrix.from_map(M))
    return D


SYMMETRIC, SKEW, BOTH, NEITHER = "symmetric", "skew-symmetric", "both", "neither"


def symmetry_classify(D):
    if D.nrows != D.ncols:
        raise ExteriorError("symmetry needs a square matrix")
    sym = skew = True
    for i in range(D.nrows):
        for j in range(i, D.ncols):
            a, b = D[i, j], D[j, i]
            if a != b:
                sym = False
            if a != -b:
                skew = False
            if not sym and not skew:
                return NEITHER
    if sym and skew:
        return BOTH
    return SYMMETRIC if sym else SKEW


def column_transition(A, B):
    """Constant matrix Q with A * Q == B (entrywise over the wedge basis), or None."""
    if A.nrows != B.nrows:
        raise ExteriorError("row counts differ")
    index = {}
    cols = []
    for j in range(A.ncols):
        cols.append({index.setdefault((i, t), len(index)): c for i, x in enumerate(A.column(j)) for t, c in x.terms.items()})
    rhs = []
    for j in range(B.ncols):
        vec = {}
        for i, x in enumerate(B.column(j)):
            for t, c in x.terms.items():
                if (i, t) not in index:
                    return None
                vec[index[(i, t)]] = c
        rhs.append(vec)
    sols = solve(cols, rhs)
    if any(s is None for s in sols):
        return None
    Q = [[Fraction(0)] * B.ncols for _ in range(A.ncols)]
    for j, s in enumerate(sols):
        for i, c in s.items():
            Q[i][j] = c
    if A.times_constant(Q) != B:
        return None
    return Q


def column_to_cycle(D, col, gens):
    """The chain sum_i D[i, col] (x) gens[i] as a Koszul chain."""
    from .koszul import KoszulChain

    if not 0 <= col < D.ncols:
        raise IndexError(f"column {col} out of range")
    if len(gens) != D.nrows:
        raise ExteriorError("need one generator per row")
    q = {g.homogeneous_degree() for g in gens if g}
    if len(q) != 1:
        raise ExteriorError("generators must share one degree")
    q = q.pop()
    terms = {}
    for i, x in enumerate(D.column(col)):
        for idx, c in x.terms.items():
            p = gens[i] * c
            terms[idx] = terms[idx] + p if idx in terms else p
    return KoszulChain(D.ring, D.k, q, terms, context="IX")
