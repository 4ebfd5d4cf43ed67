"""Golden files: the full pipeline on every corpus entry, serialized.

Computed matrices are related to the displayed ones by constant changes of
basis T_i of F_i (T_1 = identity, as d_1 is the displayed generator row):

    T_{i-1}^{-1} d_i T_i = displayed d_i,   D_p T_p = displayed D_p.

The T_i are written next to the computed matrices so that each displayed
matrix can be reproduced from the files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .corpus import NAMES, corpus_example, format_ideal_file, minors
from .duality import theorem_check
from .exterior import column_to_cycle, column_transition, wedge_compose
from .groebner import ideal_equal
from .koszul import koszul_cohomology_dim
from .resolution import ComplexMap, betti_table, constant_transition, free_resolution, graded_inverse
from .ring import format_coeff
from .syzscheme import syzygy_scheme_decompose

FIXTURE_DIR = Path(__file__).parent / "fixtures"

# which displayed maps exist, and which cycles the examples single out
_DISPLAYED_MAPS = {
    "rnc4": ("d2", "d3"),
    "gr25": ("d2",),
    "dp5_surface": ("d2",),
    "segre22": ("d2", "d3"),
    "ci5": ("d2", "d3", "d4"),
}
_DISPLAYED_D = {"rnc4": ("D3", 3), "veronese_proj": ("D4", 4), "ci5": ("D4", 4)}
_SCHEME_CYCLES = {
    "gr25": [("computed", 4)],
    "dp5_surface": [("computed", 4)],
    "segre22": [("gamma", 0), ("gamma_prime", 0)],
}


@dataclass
class PipelineResult:
    name: str
    complex: object
    self_dual: bool
    report: object = None
    transitions: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)  # (label, ok)
    D: dict = field(default_factory=dict)  # p -> ExteriorMatrix in computed bases

    @property
    def ok(self):
        return all(ok for _, ok in self.checks)


def _displayed_map(entry, key, C, i):
    rows = entry.matrix(key)
    return ComplexMap.from_rows(entry.ring, rows, target_twists=C.modules[i - 1], source_twists=C.modules[i])


def match_displayed(entry, C):
    """Transitions T_i from the computed complex C to the displayed maps."""
    checks = []
    T = {1: ComplexMap.identity(entry.ring, C.modules[1])}
    for key in _DISPLAYED_MAPS.get(entry.name, ()):
        i = int(key[1:])
        shown = _displayed_map(entry, key, C, i)
        A = graded_inverse(T[i - 1]) @ C.d(i)
        Ti = constant_transition(A, shown)
        checks.append((f"{key} matches up to basis change", Ti is not None))
        if Ti is None:
            break
        T[i] = Ti
    return T, checks


def run_pipeline(name):
    entry = corpus_example(name)
    C = free_resolution(entry.ideal)
    report = None
    self_dual = False
    if entry.gorenstein:
        report = theorem_check(entry.ideal, name, complex=C)
        if report.ok:
            C = report.complex
            self_dual = True
    res = PipelineResult(name, C, self_dual, report)
    e = C.length
    linear = [i for i in range(2, e + 1) if C.d(i).is_linear()]
    top = 1
    while top + 1 in linear:
        top += 1
    for p in range(2, top + 1):
        res.D[p] = wedge_compose([C.d(i) for i in range(2, p + 1)])
    T, checks = match_displayed(entry, C)
    res.transitions = T
    res.checks += checks
    if name in _DISPLAYED_D:
        key, p = _DISPLAYED_D[name]
        shown = entry.exterior(key)
        if p in T:
            ok = res.D[p].times_constant(T[p].constant_matrix()) == shown
        else:
            Q = column_transition(res.D[p], shown)
            ok = Q is not None
            if ok:
                T[p] = ComplexMap.from_constant(entry.ring, Q, C.modules[p], C.modules[p])
        res.checks.append((f"{key} matches up to basis change", ok))
    if name == "veronese_proj":
        vec = entry.exterior("D3_vector")
        res.checks.append(("displayed vector lies in the column space of D3", column_transition(res.D[3], vec) is not None))
    if name == "segre22":
        shown = wedge_compose([_displayed_map(entry, k, C, int(k[1:])) for k in ("d2", "d3")])
        res.checks.append(("displayed gamma is column 1 of displayed D3", shown.column(0) == entry.exterior("gamma").column(0)))
        res.checks.append(("displayed gamma' is column 9 of displayed D3", shown.column(8) == entry.exterior("gamma_prime").column(0)))
        ok = 3 in T and res.D[3].times_constant(T[3].constant_matrix()) == shown
        res.checks.append(("D3 matches up to basis change", ok))
    if report is not None:
        res.checks.append(("theorem check", report.ok))
    return res


def _matrix_text(mat):
    return "".join(", ".join(format_coeff(x) for x in row) + "\n" for row in mat)


def _scheme_cycles(entry, res):
    out = []
    gens = entry.generators
    for key, col in _SCHEME_CYCLES.get(entry.name, ()):
        if key == "computed":
            D = res.D[res.complex.length - 1]
            out.append((f"column {col + 1} of D_{res.complex.length - 1}", column_to_cycle(D, col, gens)))
        else:
            out.append((key, column_to_cycle(entry.exterior(key), col, gens)))
    return out


def golden_files(name):
    """Deterministic text files for one corpus entry."""
    entry = corpus_example(name)
    res = run_pipeline(name)
    C = res.complex
    files = {}
    files[f"{name}.ideal"] = format_ideal_file(entry.ring, entry.generators, entry.description)
    B = betti_table(C)
    files[f"{name}.betti"] = B.to_text()
    if res.self_dual:
        files[f"{name}.theorem"] = res.report.to_text()
    for p, D in sorted(res.D.items()):
        files[f"{name}.D{p}"] = D.to_text()
    for i in range(2, C.length + 1):
        rows = C.d(i).dense()
        files[f"{name}.d{i}"] = "".join(", ".join(str(p) if p else "." for p in r) + "\n" for r in rows)
    for i, Ti in sorted(res.transitions.items()):
        if i == 1:
            continue
        files[f"{name}.T{i}"] = _matrix_text(Ti.constant_matrix())
    checks = [f"{label}: {'ok' if ok else 'FAILED'}" for label, ok in res.checks]
    if name == "veronese_proj":
        checks.append(f"dim K_3,3(I, S_1) = {koszul_cohomology_dim(entry.ideal, 3, 3, 'IX')}")
    files[f"{name}.checks"] = "\n".join(checks) + "\n" if checks else ""
    scheme = []
    for label, gamma in _scheme_cycles(entry, res):
        rep = syzygy_scheme_decompose(gamma, entry.ideal)
        text = f"[{label}]\n{rep.to_text()}"
        if "scroll" in entry.displayed:
            scroll = ideal_equal(rep.ideal, minors(entry.matrix("scroll"), 2))
            text += f"I(gamma) equals the scroll minors: {'yes' if scroll else 'no'}\n"
        scheme.append(text)
    if scheme:
        files[f"{name}.syzscheme"] = "\n".join(scheme)
    return files


def generate_all(names=NAMES):
    out = {}
    for n in names:
        out.update(golden_files(n))
    return out


def write_fixtures(directory=FIXTURE_DIR, names=NAMES):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    files = generate_all(names)
    for fname, text in sorted(files.items()):
        (directory / fname).write_bytes(text.encode())
    return sorted(files)


def verify_fixtures(directory=FIXTURE_DIR, names=NAMES):
    """Regenerate and compare; returns (checked names, list of differences)."""
    directory = Path(directory)
    files = generate_all(names)
    diffs = []
    for fname, text in sorted(files.items()):
        path = directory / fname
        if not path.exists():
            diffs.append(f"{fname}: missing")
        elif path.read_bytes() != text.encode():
            diffs.append(f"{fname}: differs")
    known = set(files)
    prefixes = tuple(f"{n}." for n in names)
    for path in sorted(directory.glob("*")):
        if path.name.startswith(prefixes) and path.name not in known:
            diffs.append(f"{path.name}: not produced by the pipeline")
    return sorted(files), diffs
