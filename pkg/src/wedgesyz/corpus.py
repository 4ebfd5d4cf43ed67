"""The worked examples: ideals, metadata and the matrices displayed for them.

Matrices are kept as text in the same grammar the CLI reads, one row per
line with entries separated by commas; ``.`` stands for zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .groebner import Ideal
from .ring import PolyRing, Polynomial


class CorpusError(KeyError):
    pass


# minors and Pfaffians -------------------------------------------------------------


def _to_poly(ring, x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, str):
        return ring.zero() if x.strip() == "." else ring(x)
    return ring.const(x)


def poly_matrix(ring, rows):
    """Dense matrix of polynomials from rows of strings / numbers / polynomials."""
    return [[_to_poly(ring, x) for x in r] for r in rows]


def parse_matrix(ring, text):
    """Rows separated by newlines, entries by commas; ``.`` is zero."""
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            rows.append([_to_poly(ring, x) for x in line.split(",")])
    return rows


def determinant(M):
    """Exact determinant by Laplace expansion along the first row."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return M[0][0]
    total = M[0][0].ring.zero()
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [r[:j] + r[j + 1 :] for r in M[1:]]
        term = M[0][j] * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(M, k):
    """Ideal of all k x k minors of a polynomial matrix."""
    nr, nc = len(M), len(M[0]) if M else 0
    if not 1 <= k <= min(nr, nc):
        raise ValueError(f"minor size {k} out of range for a {nr}x{nc} matrix")
    ring = M[0][0].ring
    gens = []
    for rs in combinations(range(nr), k):
        for cs in combinations(range(nc), k):
            gens.append(determinant([[M[r][c] for c in cs] for r in rs]))
    return Ideal(ring, gens)


def is_skew(M):
    n = len(M)
    return all(len(r) == n for r in M) and all(M[i][j] == -M[j][i] for i in range(n) for j in range(n))


def pfaffian(M):
    """Pfaffian by expansion along the first row.

    Pf(M) = sum_{j>0} (-1)^(j+1) M[0][j] Pf(M without rows/columns 0, j).
    """
    n = len(M)
    if n % 2:
        raise ValueError("odd size matrices have no Pfaffian")
    if n == 0:
        raise ValueError("empty matrix")
    if n == 2:
        return M[0][1]
    total = M[0][1].ring.zero()
    for j in range(1, n):
        if not M[0][j]:
            continue
        keep = [t for t in range(1, n) if t != j]
        sub = [[M[a][b] for b in keep] for a in keep]
        term = M[0][j] * pfaffian(sub)
        total = total + term if j % 2 == 1 else total - term
    return total


def pfaffians(M, k):
    """Ideal of all principal k x k sub-Pfaffians of a skew matrix."""
    if not is_skew(M):
        raise ValueError("matrix is not skew-symmetric")
    if k % 2 or k <= 0:
        raise ValueError("Pfaffian size must be positive and even")
    n = len(M)
    if k > n:
        raise ValueError(f"Pfaffian size {k} exceeds matrix size {n}")
    ring = M[0][0].ring
    gens = [pfaffian([[M[a][b] for b in idx] for a in idx]) for idx in combinations(range(n), k)]
    return Ideal(ring, gens)


def submaximal_pfaffians(M):
    """Signed Pfaffians q_i = (-1)^i Pf(M without i) of an odd skew matrix.

    With this sign the row vector q satisfies q M = 0.
    """
    if not is_skew(M):
        raise ValueError("matrix is not skew-symmetric")
    n = len(M)
    if n % 2 == 0:
        raise ValueError("needs an odd size matrix")
    out = []
    for i in range(n):
        keep = [t for t in range(n) if t != i]
        p = pfaffian([[M[a][b] for b in keep] for a in keep])
        out.append(p if i % 2 == 0 else -p)
    return out


def skew_from_upper(ring, upper):
    """Full skew matrix from the strictly upper triangle given row by row."""
    n = len(upper) + 1
    M = [[ring.zero()] * n for _ in range(n)]
    for i, row in enumerate(upper):
        for k, x in enumerate(row):
            j = i + 1 + k
            p = _to_poly(ring, x)
            M[i][j] = p
            M[j][i] = -p
    return M


# entries ------------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    ring: PolyRing
    ideal: Ideal
    n: int
    e: int
    r: int
    d: int
    del_pezzo: bool
    gorenstein: bool
    description: str = ""
    displayed: dict = field(default_factory=dict, compare=False)

    @property
    def generators(self):
        return list(self.ideal.generators)

    def matrix(self, key):
        """A displayed polynomial matrix as a dense list of rows."""
        return parse_matrix(self.ring, self.displayed[key])

    def exterior(self, key):
        """A displayed exterior matrix, scalar factor included."""
        from .exterior import ExteriorMatrix

        factor, k, text = self.displayed[key]
        return ExteriorMatrix.from_text(text, self.ring, k).scale(factor)


def _ring(names):
    return PolyRing(tuple(names.split()))


_RNC_D2 = """
-x2, x3, -x3, ., x4, ., ., .
x1, -x2, ., -x3, ., x4, x4, .
-x0, x1, ., ., ., -x3, ., x4
., ., x1, x2, -x2, -x3, -x3, .
., ., -x0, ., x1, x2, ., -x3
., ., ., -x0, ., ., x1, x2
"""

_RNC_D3 = """
x3, -x4, .
., x3, -x4
-x2, x3, .
x1, -x2, .
., -x2, x3
-x0, x1, .
x0, ., -x2
., -x0, x1
"""

_RNC_DD3 = """
-x2^x3, x2^x4, -x3^x4
x1^x3, -x2^x3 - x1^x4, x2^x4
-x0^x3, x1^x3 + x0^x4, -x1^x4
-x1^x2, x1^x3, -x2^x3
x0^x2, -x1^x2 - x0^x3, x1^x3
-x0^x1, x0^x2, -x1^x2
"""


def _rnc4():
    ring = _ring("x0 x1 x2 x3 x4")
    gens = [ring(s) for s in (
        "x1^2 - x0*x2",
        "x1*x2 - x0*x3",
        "x2^2 - x1*x3",
        "x1*x3 - x0*x4",
        "x2*x3 - x1*x4",
        "x3^2 - x2*x4",
    )]
    return CorpusEntry(
        "rnc4", ring, Ideal(ring, gens), n=1, e=3, r=4, d=4, del_pezzo=False, gorenstein=False,
        description="rational normal quartic curve in P^4",
        displayed={
            "M": "x0, x1, x2, x3\nx1, x2, x3, x4",
            "d2": _RNC_D2,
            "d3": _RNC_D3,
            "D3": (2, 2, _RNC_DD3),
        },
    )


_VERONESE_D4 = """
-y1^y2^y3
y0^y2^y3 - y1^y2^y4
y0^y2^y4 - y1^y3^y4
y0^y3^y4
-y0^y1^y3
-y0^y1^y4 + y2^y3^y4
y0^y1^y2 - y2^y3^y4
"""

_VERONESE_D3_VECTOR = """
0
y1^y2
-y0^y2 + y1^y3
-y0^y3
0
y0^y1 - y2^y3
y2^y3
"""


def _veronese_proj():
    ring = _ring("y0 y1 y2 y3 y4")
    gens = [ring(s) for s in (
        "y0^3 - y0*y3^2 + y0*y2*y4 + y1*y3*y4 - y0*y4^2",
        "y0^2*y1 - y1*y3^2 + y0*y3*y4",
        "y0*y1^2 + y1*y2*y3 - y0*y3^2",
        "y1^3 - y1*y2^2 + y0*y2*y3 - y1*y3^2 + y1*y2*y4",
        "y0^2*y2 - y2*y3^2 - y1^2*y4 + y2^2*y4 + y3^2*y4 - y2*y4^2",
        "y0*y1*y2 + y1^2*y3 - y3^3 + y2*y3*y4",
        "y0^2*y3 - y3^3 + y0*y1*y4 + y2*y3*y4",
    )]
    return CorpusEntry(
        "veronese_proj", ring, Ideal(ring, gens), n=2, e=2, r=4, d=4, del_pezzo=False, gorenstein=False,
        description="isomorphic projection of the Veronese surface to P^4",
        displayed={
            "D4": (6, 3, _VERONESE_D4),
            "D3_vector": (1, 2, _VERONESE_D3_VECTOR),
        },
    )


_GR25_UPPER = [
    ["x01", "x02", "x03", "x04"],
    ["x12", "x13", "x14"],
    ["x23", "x24"],
    ["x34"],
]


def _gr25():
    ring = _ring("x01 x02 x03 x04 x12 x13 x14 x23 x24 x34")
    M = skew_from_upper(ring, _GR25_UPPER)
    gens = submaximal_pfaffians(M)
    return CorpusEntry(
        "gr25", ring, Ideal(ring, gens), n=6, e=3, r=9, d=5, del_pezzo=True, gorenstein=True,
        description="Grassmannian Gr(2,5) in P^9",
        displayed={"d2": _rows_text(M)},
    )


_DP5_UPPER = [
    ["-x0 + x1", "-x1", "x1 - x5", "x5"],
    ["-x2", "-x5", "x5"],
    ["x2", "-x3"],
    ["x4"],
]


def _dp5_surface():
    ring = _ring("x0 x1 x2 x3 x4 x5")
    M = skew_from_upper(ring, _DP5_UPPER)
    gens = submaximal_pfaffians(M)
    return CorpusEntry(
        "dp5_surface", ring, Ideal(ring, gens), n=2, e=3, r=5, d=5, del_pezzo=True, gorenstein=True,
        description="del Pezzo surface of degree 5 in P^5",
        displayed={
            "d2": _rows_text(M),
            "scroll": "x0 - x1, -x1 + x2, x1\nx5, x3, -x4",
            "syzygy_quadrics": "-x1*x3 + x1*x4 - x2*x4\n-x0*x4 + x1*x4 - x1*x5\n-x0*x3 + x1*x3 - x1*x5 + x2*x5",
        },
    )


_SEGRE_M = """
0, a, b, d, e, f
-a, 0, c, e, g, h
-b, -c, 0, f, h, i
-d, -e, -f, 0, -a, -b
-e, -g, -h, a, 0, -c
-f, -h, -i, b, c, 0
"""

_SEGRE_D2 = """
., -a, -b, -d, -e, -h, f, ., i, ., ., ., ., ., ., c
a, ., -c, -e, -g, ., -h, f, ., i, h, ., ., -b, -c, .
b, c, ., -f, -h, ., ., ., ., ., i, ., ., ., ., .
d, e, f, ., a, c, -b, ., ., ., ., i, ., ., ., -h
e, g, h, -a, ., ., c, -b, ., ., -c, ., i, f, h, .
., ., ., ., ., ., -g, e, ., h, ., ., c, -a, ., .
., ., ., ., ., g, ., -d, -h, -f, e, -c, -b, ., -a, .
., ., ., ., ., -e, d, ., f, ., -d, b, ., ., ., -a
., ., ., ., ., ., ., ., -c, b, -a, -h, f, d, e, g
"""

# the quadrics whose linear syzygies are the columns of the displayed d_2,
# in row order; they span the degree-2 part of the Pfaffian ideal
_SEGRE_QUADRICS = (
    "a*c - f*g + e*h",
    "-a*b + e*f - d*h",
    "a^2 - e^2 + d*g",
    "c*e - b*g + a*h",
    "-c*d + b*e - a*f",
    "b^2 - f^2 + d*i",
    "b*c - f*h + e*i",
    "c^2 - h^2 + g*i",
    "c*f - b*h + a*i",
)

_SEGRE_GAMMA = """
0
-c^f + b^h + a^i
b^i
d^i
-b^c - f^h + e^i
-c^e + a^h
c^d + b^e - a^f
-b^d
a^b + e^f - d^h
"""

_SEGRE_GAMMA_PRIME = """
-a^b - e^f + d^h
-a^c + f^g + e^h
-b^c + f^h
c^d - b^e + a^f
c^e - b^g + a^h
e^g
-d^g
d^e
0
"""


def _segre22():
    ring = _ring("a b c d e f g h i")
    gens = [ring(s) for s in _SEGRE_QUADRICS]
    rows = [line.split(",") for line in _SEGRE_D2.strip().splitlines()]
    A = [r[:8] for r in rows]
    B = [r[8:] for r in rows]
    d3 = [list(c) for c in zip(*B)] + [list(c) for c in zip(*A)]
    return CorpusEntry(
        "segre22", ring, Ideal(ring, gens), n=4, e=4, r=8, d=6, del_pezzo=True, gorenstein=True,
        description="Segre fourfold P^2 x P^2 in P^8",
        displayed={
            "M": _SEGRE_M,
            "d2": _SEGRE_D2,
            "d3": "\n".join(", ".join(x.strip() for x in r) for r in d3),
            "gamma": (2, 2, _SEGRE_GAMMA),
            "gamma_prime": (2, 2, _SEGRE_GAMMA_PRIME),
        },
    )


_CI_D2 = """
-x4, ., ., ., -x3, ., ., -x2, ., -x1
., -x4, ., ., ., -x3, ., ., -x2, x0
., ., -x4, ., ., ., -x3, x0, x1, .
., ., ., -x4, x0, x1, x2, ., ., .
x0, x1, x2, x3, ., ., ., ., ., .
"""

_CI_D3 = """
., ., ., ., ., -x2, x1, ., x3, .
., ., ., ., x2, ., -x0, -x3, ., .
., ., ., ., -x1, x0, ., ., ., x3
., ., ., ., ., ., ., x1, -x0, -x2
., x2, -x1, ., ., ., ., ., -x4, .
-x2, ., x0, ., ., ., ., x4, ., .
x1, -x0, ., ., ., ., ., ., ., -x4
., -x3, ., x1, ., x4, ., ., ., .
x3, ., ., -x0, -x4, ., ., ., ., .
., ., x3, -x2, ., ., -x4, ., ., .
"""

_CI_DD4 = """
0, x2^x3^x4, -x1^x3^x4, x1^x2^x4, -x1^x2^x3
-x2^x3^x4, 0, x0^x3^x4, -x0^x2^x4, x0^x2^x3
x1^x3^x4, -x0^x3^x4, 0, x0^x1^x4, -x0^x1^x3
-x1^x2^x4, x0^x2^x4, -x0^x1^x4, 0, x0^x1^x2
x1^x2^x3, -x0^x2^x3, x0^x1^x3, -x0^x1^x2, 0
"""


def _ci5():
    ring = _ring("x0 x1 x2 x3 x4")
    d2 = [line.split(",") for line in _CI_D2.strip().splitlines()]
    d4 = [[_neg_text(d2[i][j]) for i in range(len(d2))] for j in range(len(d2[0]))]
    return CorpusEntry(
        "ci5", ring, Ideal(ring, ring.gens()), n=-1, e=5, r=4, d=1, del_pezzo=False, gorenstein=True,
        description="complete intersection of the five coordinates",
        displayed={
            "d2": _CI_D2,
            "d3": _CI_D3,
            "d4": "\n".join(", ".join(r) for r in d4),
            "D4": (6, 3, _CI_DD4),
        },
    )


def _neg_text(s):
    s = s.strip()
    if s == ".":
        return "."
    return s[1:] if s.startswith("-") else "-" + s


def _rows_text(M):
    return "\n".join(", ".join(str(p) if p else "." for p in r) for r in M)


_BUILDERS = {
    "rnc4": _rnc4,
    "veronese_proj": _veronese_proj,
    "gr25": _gr25,
    "dp5_surface": _dp5_surface,
    "segre22": _segre22,
    "ci5": _ci5,
}

NAMES = tuple(_BUILDERS)
_CACHE = {}


def corpus_example(name):
    """The named example; entries are built once and shared."""
    if name not in _BUILDERS:
        raise CorpusError(f"unknown corpus entry {name!r}; known: {', '.join(NAMES)}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


# the input file format --------------------------------------------------------------


class InputError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def format_ideal_file(ring, gens, comment=None):
    lines = [f"# {comment}"] if comment else []
    lines.append("ring " + " ".join(ring.variables))
    lines.append("ideal")
    lines += [str(g) for g in gens]
    return "\n".join(lines) + "\n"


def parse_ideal_file(text, order="grevlex"):
    """``ring x y ...`` line, ``ideal`` line, then one polynomial per line."""
    ring = None
    in_ideal = False
    gens = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ring is None:
            words = line.split()
            if words[0] != "ring" or len(words) < 2:
                raise InputError("expected 'ring <variables>'", n)
            try:
                ring = PolyRing(tuple(words[1:]), order)
            except ValueError as exc:
                raise InputError(str(exc), n) from None
            continue
        if not in_ideal:
            if line != "ideal":
                raise InputError("expected 'ideal'", n)
            in_ideal = True
            continue
        try:
            gens.append(ring(line))
        except ValueError as exc:
            raise InputError(str(exc), n) from None
    if ring is None:
        raise InputError("empty input")
    if not in_ideal:
        raise InputError("missing 'ideal' line")
    if not gens:
        raise InputError("no generators")
    return ring, gens
