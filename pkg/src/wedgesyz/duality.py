"""Self-duality of Gorenstein resolutions and the skew-symmetry check.

For a minimal resolution F of length e with F_e of rank one, the twisted
dual F^v = Hom(F, S(-T)), T = twist(F_e), is again a resolution.  Lifting
the identity of S gives a comparison u: F^v -> F with

    d_i u_i = u_{i-1} d_{e-i+1}^T.

The transposes u_{e-i}^T lift the scalar c = u_e, so the symmetrized
w_i = (u_i + c u_{e-i}^T) / 2 is again a comparison and satisfies
w_{e-i}^T = c w_i exactly.  Taking w_j as the new basis of F_j for
j > e/2 turns d_j into d_{e-j+1}^T in the upper half and makes the
middle map (skew-)symmetric with sign c.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exterior import SKEW, symmetry_classify, wedge_compose
from .groebner import Ideal
from .resolution import (
    Complex,
    ComplexMap,
    ResolutionError,
    free_resolution,
    graded_inverse,
    graded_solve,
)


class DualityError(ValueError):
    pass


def gorenstein_twist(C):
    """t with twist(F_e) = r + t + 1, where r + 1 is the number of variables."""
    if C.length < 1:
        raise DualityError("complex has length zero")
    top = C.modules[-1]
    if len(top) != 1:
        raise DualityError(f"F_{C.length} has rank {len(top)}, not 1: not Gorenstein")
    return top[0] - C.ring.nvars


def dualize_complex(C, t):
    """Hom(F, S(-r-t-1)): G_i = F_{e-i}^v, differentials d_{e-i+1}^T, no signs."""
    T = C.ring.nvars + t
    e = C.length
    modules = [tuple(T - a for a in C.modules[e - i]) for i in range(e + 1)]
    maps = [C.d(e - i + 1).transpose(T) for i in range(1, e + 1)]
    return Complex(C.ring, modules, maps)


def _as_map(ring, f0, target_twists, source_twists):
    if isinstance(f0, ComplexMap):
        return f0
    return ComplexMap.from_constant(ring, f0, target_twists, source_twists)


def lift_chain_map(source, target, f0):
    """Chain map f with d_i^target f_i = f_{i-1} d_i^source, f_0 given.

    Each column of f_{i-1} d_i^source is lifted through d_i^target by
    graded linear algebra in the degree of the corresponding basis element.
    """
    ring = source.ring
    if source.length != target.length:
        raise DualityError("complexes have different lengths")
    f = [_as_map(ring, f0, target.modules[0], source.modules[0])]
    for i in range(1, source.length + 1):
        rhs = f[i - 1] @ source.d(i)
        by_deg = {}
        for j, a in enumerate(source.modules[i]):
            by_deg.setdefault(a, []).append(j)
        cols = [None] * len(source.modules[i])
        rcols = rhs.columns()
        for deg, js in sorted(by_deg.items()):
            sols = graded_solve(target.d(i), [rcols[j] for j in js], deg)
            for j, x in zip(js, sols):
                if x is None:
                    raise DualityError(f"lifting fails in homological degree {i}")
                cols[j] = x
        fi = ComplexMap.from_columns(ring, target.modules[i], source.modules[i], cols)
        if not (target.d(i) @ fi).same_entries(rhs):
            raise DualityError(f"lifted map is not a chain map in degree {i}")
        f.append(fi)
    return f


@dataclass
class DualityData:
    t: int
    sign: int
    comparison: list
    bases: list
    phi: ComplexMap | None = None
    notes: list = field(default_factory=list)

    @property
    def m(self):
        return (len(self.comparison) - 1) // 2


def _transpose_plain(A):
    """Transpose of a comparison map G_i -> F_i as a map G_{e-i} -> F_{e-i}."""
    return ComplexMap(A.ring, A.source_twists, A.target_twists, {(j, i): p for (i, j), p in A.entries.items()})


def self_dual_bases(C):
    """Basis change making F self-dual; returns (new complex, DualityData)."""
    ring = C.ring
    e = C.length
    t = gorenstein_twist(C)
    G = dualize_complex(C, t)
    if G.modules[0] != C.modules[0]:
        raise DualityError("dual complex does not start with S")
    u = lift_chain_map(G, C, [[1]])
    top = u[e][(0, 0)]
    if not top.is_constant() or top.constant_coeff() not in (1, -1):
        raise DualityError(f"top comparison {top} is not a sign")
    c = int(top.constant_coeff())
    w = []
    for i in range(e + 1):
        # u_{e-i}^T : G_i -> F_i has the same twists as u_i
        ui = u[i]
        vi = ComplexMap(ring, ui.target_twists, ui.source_twists, _transpose_plain(u[e - i]).entries)
        w.append((ui + vi.scale(c)).scale(Fraction(1, 2)))
    for i, wi in enumerate(w):
        try:
            graded_inverse(wi)
        except ResolutionError:
            raise DualityError(f"symmetrized comparison is singular in degree {i}") from None
        if i and not (C.d(i) @ wi).same_entries(w[i - 1] @ G.d(i)):
            raise DualityError(f"symmetrized comparison is not a chain map in degree {i}")
    half = e // 2
    bases = [ComplexMap.identity(ring, C.modules[j]) if j <= half else w[j] for j in range(e + 1)]
    inv = [graded_inverse(B) for B in bases]
    maps = [inv[j - 1] @ C.d(j) @ bases[j] for j in range(1, e + 1)]
    D = Complex(ring, [B.source_twists for B in bases], maps)
    if not D.is_complex():
        raise DualityError("basis change did not give a complex")
    data = DualityData(t=t, sign=c, comparison=w, bases=bases)
    if e % 2 == 0:
        data.phi = w[half]
    expected = (-1) ** half
    if c != expected:
        data.notes.append(f"comparison sign {c} differs from (-1)^m = {expected}")
    return D, data


def check_self_dual(D, data):
    """The identities the new bases are meant to satisfy; returns failures."""
    e = D.length
    T = D.modules[-1][0]
    m = e // 2
    bad = []
    for j in range(m + 2, e + 1):
        if not D.d(j).same_entries(D.d(e - j + 1).transpose(T)):
            bad.append(f"d_{j} != d_{e - j + 1}^T")
    if e % 2:
        mid = D.d(m + 1)
        if not mid.transpose(T).same_entries(mid.scale(data.sign)):
            bad.append(f"d_{m + 1}^T != {data.sign} d_{m + 1}")
    else:
        phi = data.phi
        if not _transpose_plain(phi).same_entries(phi.scale(data.sign)):
            bad.append("phi^T != sign * phi")
        if not D.d(m + 1).same_entries(phi @ D.d(m).transpose(T)):
            bad.append(f"d_{m + 1} != phi d_{m}^T")
    return bad


# the full check -------------------------------------------------------------------------


@dataclass
class TheoremReport:
    name: str
    checks: list = field(default_factory=list)  # (label, ok, detail)
    D: object = None
    classification: str | None = None
    data: DualityData | None = None
    complex: Complex | None = None

    @property
    def ok(self):
        return self.classification == SKEW and all(ok for _, ok, _ in self.checks)

    def add(self, label, ok, detail=""):
        self.checks.append((label, ok, detail))
        return ok

    def to_text(self, primitive=False):
        lines = [f"theorem check: {self.name}"]
        for label, ok, detail in self.checks:
            lines.append(f"  {label}: {'ok' if ok else 'FAILED'}" + (f" ({detail})" if detail else ""))
        if self.classification is not None:
            lines.append(f"symmetry: {self.classification}")
        lines.append(f"skew-symmetric: {'yes' if self.ok else 'no'}")
        if self.D is not None:
            e = self.complex.length
            lines.append(f"D_{e - 1} ({self.D.nrows}x{self.D.ncols}):")
            lines.append(self.D.to_text(primitive=primitive).rstrip("\n"))
        return "\n".join(lines) + "\n"

    def to_kv(self, primitive=False):
        lines = [f"name = {self.name}"]
        for label, ok, _ in self.checks:
            lines.append(f"check.{label.replace(' ', '_')} = {'ok' if ok else 'failed'}")
        lines.append(f"symmetry = {self.classification}")
        lines.append(f"skew = {'yes' if self.ok else 'no'}")
        out = "\n".join(lines) + "\n"
        if self.D is not None:
            out += self.D.to_kv("D", primitive=primitive)
        return out


def betti_symmetric(C):
    """Twists of F_i and F_{e-i} mirror under a -> twist(F_e) - a."""
    e = C.length
    T = C.modules[e][0] if len(C.modules[e]) == 1 else None
    if T is None:
        return False
    return all(sorted(C.modules[i]) == sorted(T - a for a in C.modules[e - i]) for i in range(e + 1))


def linear_except_ends(C):
    """True when F_i is generated in one degree and d_i is linear for 2 <= i <= e-1."""
    e = C.length
    for i in range(1, e):
        if len(set(C.modules[i])) != 1:
            return False
    return all(C.d(i).is_linear() for i in range(2, e))


def theorem_check(ideal, name="input", complex=None):
    """resolve -> self-dual bases -> D_{e-1} -> symmetry classification."""
    rep = TheoremReport(name)
    if not rep.add("homogeneous", isinstance(ideal, Ideal) and ideal.is_homogeneous):
        return rep
    C = complex if complex is not None else free_resolution(ideal)
    rep.complex = C
    e = C.length
    if not rep.add("minimal", C.is_minimal()):
        return rep
    if not rep.add("codimension at least 3", e >= 3, f"e = {e}"):
        return rep
    if not rep.add("gorenstein", len(C.modules[e]) == 1, f"rank F_{e} = {len(C.modules[e])}"):
        return rep
    if not rep.add("self-dual betti table", betti_symmetric(C)):
        return rep
    if not rep.add("linear except ends", linear_except_ends(C)):
        return rep
    try:
        D, data = self_dual_bases(C)
    except DualityError as exc:
        rep.add("self-dual bases", False, str(exc))
        return rep
    bad = check_self_dual(D, data)
    rep.add("self-dual bases", not bad, "; ".join(bad) or f"sign {data.sign}")
    rep.complex = D
    rep.data = data
    rep.D = wedge_compose([D.d(i) for i in range(2, e)])
    rep.classification = symmetry_classify(rep.D)
    return rep
