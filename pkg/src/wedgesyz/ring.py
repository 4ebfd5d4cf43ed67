"""Exact multivariate polynomials over Q with graded monomial orders.

Monomials are plain tuples of exponents.  A :class:`Polynomial` keeps a
dictionary ``{exponents: Fraction}`` and exposes its terms sorted in
descending monomial order, leading term first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

ORDERS = ("grevlex", "lex", "elim")

LT, EQ, GT = -1, 0, 1


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


@lru_cache(maxsize=None)
def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


@lru_cache(maxsize=None)
def _elim_key(exps):
    # first variable forms its own block, bigger than everything else
    return (exps[0], _grevlex_key(exps[1:]))


def _lex_key(exps):
    return exps


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring Q[variables] with a monomial order.

    ``order`` is one of ``grevlex``, ``lex`` or ``elim``; the last one is a
    block order where the first variable dominates and the remaining
    variables are compared by grevlex.
    """

    variables: tuple
    order: str = "grevlex"

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def key(self):
        if self.order == "grevlex":
            return _grevlex_key
        if self.order == "lex":
            return _lex_key
        return _elim_key

    def index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def with_order(self, order):
        return PolyRing(self.variables, order)

    # constructors ---------------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        c = Fraction(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def linear_form(self, coeffs):
        """Linear form sum(c_i * x_i)."""
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        return Polynomial(self, terms)

    def __call__(self, text):
        return parse_polynomial(text, self)


def compare_monomials(a, b, ring):
    """Return LT, EQ or GT comparing exponent tuples ``a`` and ``b``."""
    if len(a) != ring.nvars or len(b) != ring.nvars:
        raise RingMismatch("monomial length does not match ring")
    ka, kb = ring.key(tuple(a)), ring.key(tuple(b))
    if ka == kb:
        return EQ
    return GT if ka > kb else LT


def graded_piece_basis(ring, d):
    """All monomials of degree ``d``, sorted descending in the ring order."""
    if d < 0:
        raise ValueError("negative degree")
    return _graded_piece_basis(ring.nvars, d, ring.order)


@lru_cache(maxsize=None)
def _graded_piece_basis(n, d, order):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    key = PolyRing(tuple(f"v{i}" for i in range(n)), order).key
    out.sort(key=key, reverse=True)
    assert len(out) == comb(n + d - 1, d)
    return tuple(out)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial; equality is structural."""

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self._terms = terms
        self._sorted = None
        self._hash = None

    @classmethod
    def from_terms(cls, ring, pairs: Iterable):
        terms = {}
        for exps, c in pairs:
            exps = tuple(exps)
            c = terms.get(exps, 0) + Fraction(c)
            if c:
                terms[exps] = c
            else:
                terms.pop(exps, None)
        return cls(ring, terms)

    # read access ------------------------------------------------------------

    @property
    def terms(self):
        """Terms sorted descending, as a tuple of ``(exponents, coeff)``."""
        if self._sorted is None:
            key = self.ring.key
            self._sorted = tuple(sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True))
        return self._sorted

    def as_dict(self):
        return dict(self._terms)

    def coeff(self, exps):
        return self._terms.get(tuple(exps), Fraction(0))

    def monomials(self):
        return [m for m, _ in self.terms]

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def leading_monomial(self):
        return self.terms[0][0]

    def leading_coeff(self):
        return self.terms[0][1]

    def leading_term(self):
        return self.terms[0]

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def homogeneous_degree(self):
        """Common degree of all terms, or None if not homogeneous."""
        degs = {sum(m) for m in self._terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self):
        return not self._terms or self.homogeneous_degree() is not None

    def is_constant(self):
        return all(not any(m) for m in self._terms)

    def constant_coeff(self):
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def variables_used(self):
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    # arithmetic -------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self.ring.const(other)
        if other.ring != self.ring:
            raise RingMismatch("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                del terms[m]
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {m: v * c for m, v in self._terms.items()})
        other = self._check(other)
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            q, r = divide_exact(self, c)
            if r:
                raise ArithmeticError("polynomial division is not exact")
            return q
        return self * (1 / Fraction(c))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, exps, c):
        """Multiply by the single term ``c * x^exps``."""
        return Polynomial(
            self.ring,
            {tuple(x + y for x, y in zip(m, exps)): v * c for m, v in self._terms.items()},
        )

    def monic(self):
        if not self._terms:
            return self
        return self * (1 / self.leading_coeff())

    def map_ring(self, ring, index_map=None):
        """Re-embed into ``ring``; ``index_map[i]`` is the target slot of variable i."""
        if index_map is None:
            index_map = [ring.index(v) for v in self.ring.variables]
        terms = {}
        for m, c in self._terms.items():
            e = [0] * ring.nvars
            for i, x in enumerate(m):
                if x:
                    e[index_map[i]] += x
            terms[tuple(e)] = c
        return Polynomial(ring, terms)

    def linear_coeffs(self):
        """Coefficient vector of a linear form (raises if not linear)."""
        n = self.ring.nvars
        v = [Fraction(0)] * n
        for m, c in self._terms.items():
            if sum(m) != 1:
                raise ValueError(f"{self} is not a linear form")
            v[m.index(1)] = c
        return v

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def divide_exact(f, g):
    """Multivariate division of ``f`` by a single polynomial ``g``."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    key = f.ring.key
    lm, lc = g.leading_term()
    rem = dict(f._terms)
    quot = {}
    remainder = {}
    while rem:
        m = max(rem, key=key)
        c = rem.pop(m)
        if mono_divides(lm, m):
            q = mono_div(m, lm)
            qc = c / lc
            quot[q] = quot.get(q, 0) + qc
            for gm, gc in g._terms.items():
                if gm == lm:
                    continue
                t = mono_mul(gm, q)
                s = rem.get(t, 0) - qc * gc
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        else:
            remainder[m] = c
    quot = {m: c for m, c in quot.items() if c}
    return Polynomial(f.ring, quot), Polynomial(f.ring, remainder)


# printing ----------------------------------------------------------------------


def _format_monomial(exps, variables):
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_coeff(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(f):
    if not f:
        return "0"
    out = []
    for k, (m, c) in enumerate(f.terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_monomial(m, f.ring.variables)
        if not mono:
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# parsing -----------------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


def _tokenize(text):
    tokens = []
    for m in _TOKEN.finditer(text):
        start = m.start()
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", 0)
        f = self.poly()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return f

    def poly(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        f = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            f = f + t if op == "+" else f - t
        return f

    def term(self):
        f = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "*":
                self.take()
                f = f * self.factor()
            elif tok[0] in ("int", "name", "("):
                raise ParseError("implicit multiplication is not allowed", tok[2])
            else:
                return f

    def power(self, f):
        if self.peek()[0] == "^":
            self.take()
            n = self.take("int")[1]
            return f**n
        return f

    def factor(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            c = Fraction(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                c /= den[1]
            return self.ring.const(c)
        if tok[0] == "name":
            self.take()
            try:
                x = self.ring.var(tok[1])
            except KeyError:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2]) from None
            return self.power(x)
        if tok[0] == "(":
            self.take()
            f = self.poly()
            self.take(")")
            return self.power(f)
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"unexpected {what}", tok[2])


def parse_polynomial(text, ring):
    """Parse ``text`` into a polynomial of ``ring``.

    Grammar: sums and differences of ``*``-products of integers, fractions
    ``p/q``, variables with optional ``^n`` and parenthesised
    sub-expressions (which may also carry ``^n``).  A leading sign is
    allowed.  Juxtaposition is rejected.
    """
    return _Parser(text, ring).parse()


def parse_polynomials(lines: Sequence[str], ring):
    return [parse_polynomial(s, ring) for s in lines]
