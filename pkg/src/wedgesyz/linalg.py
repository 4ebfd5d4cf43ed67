"""Exact sparse linear algebra over Q.

Vectors are dictionaries ``{int index: number}``.  Elimination is
fraction-free: every stored vector has integer entries with content 1, and
a row operation ``v <- a*v - b*p`` is followed by content removal.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm


def _integral(vec):
    """Scale a rational vector to a primitive integer vector; return (vec, scale)."""
    den = 1
    for c in vec.values():
        if isinstance(c, Fraction) and c.denominator != 1:
            den = lcm(den, c.denominator)
    out = {}
    for k, c in vec.items():
        c = Fraction(c) * den
        if c:
            out[k] = c.numerator
    return out, den


def _content(*vecs):
    g = 0
    for v in vecs:
        for c in v.values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def _axpy(a, v, b, p):
    """Return a*v - b*p for sparse integer vectors."""
    out = {k: a * c for k, c in v.items()} if a != 1 else dict(v)
    for k, c in p.items():
        s = out.get(k, 0) - b * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    With ``track=True`` every stored vector remembers which inserted
    vectors it is built from, so dependencies can be read off.
    """

    def __init__(self, track=False):
        self.track = track
        self.pivots = {}  # pivot index -> (vec, tracking)

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def _reduce(self, vec, tr):
        heap = list(vec)
        heapq.heapify(heap)
        steps = 0
        while heap:
            k = heapq.heappop(heap)
            b = vec.get(k)
            if not b:
                continue
            piv = self.pivots.get(k)
            if piv is None:
                # later eliminations only touch indices above k
                return vec, tr, k
            pv, ptr = piv
            a = pv[k]
            g = gcd(a, b)
            a, b = a // g, b // g
            vec = _axpy(a, vec, b, pv)
            if self.track:
                tr = _axpy(a, tr, b, ptr)
            for j in pv:
                if j > k and j in vec:
                    heapq.heappush(heap, j)
            steps += 1
            if steps % 16 == 0:
                c = _content(vec, tr) if self.track else _content(vec)
                if c > 1:
                    vec = {i: x // c for i, x in vec.items()}
                    if self.track:
                        tr = {i: x // c for i, x in tr.items()}
        return vec, tr, None

    def add(self, vec, tag=None):
        """Insert ``vec``.

        Returns ``None`` when the vector was independent and has been stored.
        Otherwise returns the dependency as a dict ``{tag: coefficient}``
        expressing ``0 = sum coeff * inserted_vector`` (only when tracking),
        or ``{}`` without tracking.
        """
        v, scale = _integral(vec)
        tr = {}
        if self.track:
            if tag is None:
                raise ValueError("tracking needs a tag")
            tr = {tag: scale}
        v, tr, piv = self._reduce(v, tr)
        if piv is None:
            if not self.track:
                return {}
            c = _content(tr)
            return {k: Fraction(x, c) for k, x in tr.items()}
        c = _content(v, tr) if self.track else _content(v)
        if v[piv] < 0:
            c = -c
        v = {i: x // c for i, x in v.items()}
        if self.track:
            tr = {i: x // c for i, x in tr.items()}
        self.pivots[piv] = (v, tr)
        return None

    def contains(self, vec):
        v, _ = _integral(vec)
        saved = self.track
        self.track = False
        try:
            v, _, piv = self._reduce(v, {})
        finally:
            self.track = saved
        return piv is None

    def reduced_basis(self):
        """Fully reduced row echelon basis, pivots normalised to 1, ascending pivots."""
        order = sorted(self.pivots)
        rows = {k: {i: Fraction(x) for i, x in self.pivots[k][0].items()} for k in order}
        for k in reversed(order):
            row = rows[k]
            inv = 1 / row[k]
            row = {i: x * inv for i, x in row.items()}
            rows[k] = row
            for k2 in order:
                if k2 >= k:
                    break
                r2 = rows[k2]
                c = r2.get(k)
                if c:
                    for i, x in row.items():
                        s = r2.get(i, 0) - c * x
                        if s:
                            r2[i] = s
                        else:
                            r2.pop(i, None)
        return [rows[k] for k in order]


def rank(vectors):
    ech = Echelon()
    for v in vectors:
        if v:
            ech.add(v)
    return ech.rank


def nullspace(columns):
    """Basis of {x : sum_j x_j columns[j] = 0}, as dicts ``{j: Fraction}``."""
    ech = Echelon(track=True)
    kernel = []
    for j, col in enumerate(columns):
        dep = ech.add(col, tag=j)
        if dep is not None:
            kernel.append(dep)
    return kernel


def solve(columns, rhs_list):
    """Solve ``sum_j x_j columns[j] = rhs`` for each right-hand side.

    Returns one dict ``{j: Fraction}`` per right-hand side, or ``None``
    where the system is inconsistent.
    """
    ech = Echelon(track=True)
    for j, col in enumerate(columns):
        if col:
            ech.add(col, tag=j)
    out = []
    for rhs in rhs_list:
        if not rhs:
            out.append({})
            continue
        v, scale = _integral(rhs)
        tr = {"rhs": scale}
        v, tr, piv = ech._reduce(v, tr)
        if v:
            out.append(None)
            continue
        s = tr.pop("rhs")
        out.append({k: Fraction(-x, s) for k, x in tr.items() if x})
    return out


def rref(vectors):
    ech = Echelon()
    for v in vectors:
        if v:
            ech.add(v)
    return ech.reduced_basis()


def dense_inverse(mat):
    """Inverse of a square matrix given as list of lists of rationals."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def dense_rank(mat):
    return rank([{j: x for j, x in enumerate(row) if x} for row in mat])
