"""Command-line interface.

Exit status: 0 on success, 1 when a mathematical check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .corpus import NAMES, CorpusError, InputError, corpus_example, format_ideal_file, parse_ideal_file
from .duality import DualityError, theorem_check
from .exterior import ExteriorError, column_to_cycle, wedge_compose
from .golden import FIXTURE_DIR, verify_fixtures, write_fixtures
from .groebner import Ideal
from .koszul import CONTEXTS, KoszulCohomology, KoszulError
from .resolution import ResolutionError, betti_table, free_resolution
from .ring import ParseError
from .syzscheme import (
    SyzygySchemeError,
    drop_generator_transform,
    quadric_count_bounds,
    syzygy_scheme_decompose,
)

OK, FAILED, BAD_INPUT = 0, 1, 2

COMMANDS = ("resolve", "wedge", "theorem-check", "syzygy-scheme", "koszul-dim", "corpus", "verify-fixtures")


class UsageError(ValueError):
    pass


@dataclass
class Source:
    name: str
    ideal: Ideal


@dataclass
class Result:
    text: str
    status: int = OK


def load_source(args):
    """The ideal named by --corpus or read from --input."""
    if args.corpus and args.input:
        raise UsageError("give only one of --corpus and --input")
    if args.corpus:
        entry = corpus_example(args.corpus)
        if args.order == "grevlex":
            return Source(entry.name, entry.ideal)
        text = format_ideal_file(entry.ring, entry.generators)
        ring, gens = parse_ideal_file(text, args.order)
        return Source(entry.name, Ideal(ring, gens))
    if args.input:
        path = Path(args.input)
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        try:
            ring, gens = parse_ideal_file(text, args.order)
        except InputError as exc:
            raise InputError(f"{path}: {exc}") from None
        return Source(path.stem, Ideal(ring, gens))
    raise UsageError("give --corpus NAME or --input PATH")


def _homogeneous(src):
    if not src.ideal.is_homogeneous:
        raise InputError("the ideal is not homogeneous")
    return src


def _self_dual_or_plain(ideal, name):
    """The self-dual complex when the theorem check passes, else the minimal one."""
    C = free_resolution(ideal)
    if C.length >= 3 and len(C.modules[-1]) == 1:
        report = theorem_check(ideal, name, complex=C)
        if report.ok:
            return report.complex
    return C


def cmd_resolve(args):
    src = _homogeneous(load_source(args))
    B = betti_table(free_resolution(src.ideal, max_length=args.max_length))
    return Result(B.to_kv() if args.format == "kv" else B.to_text())


def cmd_wedge(args):
    src = _homogeneous(load_source(args))
    C = _self_dual_or_plain(src.ideal, src.name)
    p = args.p
    if p is None:
        p = 1
        while p + 1 <= C.length and C.d(p + 1).is_linear():
            p += 1
    if p < 2 or p > C.length:
        raise UsageError(f"--p must lie in 2..{C.length}")
    D = wedge_compose([C.d(i) for i in range(2, p + 1)])
    if args.format == "kv":
        return Result(D.to_kv("D", primitive=args.primitive))
    return Result(f"D_{p} ({D.nrows}x{D.ncols}):\n" + D.to_text(primitive=args.primitive))


def cmd_theorem_check(args):
    src = load_source(args)
    report = theorem_check(src.ideal, src.name)
    text = report.to_kv(args.primitive) if args.format == "kv" else report.to_text(args.primitive)
    return Result(text, OK if report.ok else FAILED)


def _parse_coeffs(text):
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise UsageError(f"--coeffs expects comma-separated integers, got {text!r}") from None


def cmd_syzygy_scheme(args):
    src = _homogeneous(load_source(args))
    report = theorem_check(src.ideal, src.name)
    if not report.ok:
        return Result(report.to_text(), FAILED)
    C = report.complex
    D = report.D
    gens = [C.d(1)[(0, j)] for j in range(C.d(1).ncols)]
    if args.column is not None and args.coeffs is not None:
        raise UsageError("give only one of --column and --coeffs")
    if args.coeffs is not None:
        c = _parse_coeffs(args.coeffs)
        if len(c) != len(gens):
            raise UsageError(f"--coeffs needs {len(gens)} entries")
        Dp, Qp = drop_generator_transform(D, c, gens)
        gamma = column_to_cycle(Dp, 0, Qp)
        label = f"cycle with coefficients {','.join(map(str, c))}"
    else:
        col = args.column if args.column is not None else D.ncols - 1
        if not 0 <= col < D.ncols:
            raise UsageError(f"--column must lie in 0..{D.ncols - 1}")
        gamma = column_to_cycle(D, col, gens)
        label = f"column {col} of D_{C.length - 1}"
    if not gamma:
        raise SyzygySchemeError("the chosen cycle is zero")
    rep = syzygy_scheme_decompose(gamma, src.ideal)
    status = OK if rep.decomposition_verified else FAILED
    if args.format == "kv":
        text = rep.to_kv()
    else:
        text = f"[{label}]\ncycle: {gamma}\n{rep.to_text()}"
    if args.samples is not None:
        bounds = quadric_count_bounds(report, samples=args.samples, seed=args.seed)
        text += bounds.to_kv() if args.format == "kv" else bounds.to_text()
        if not bounds.ok:
            status = FAILED
    return Result(text, status)


def cmd_koszul_dim(args):
    src = _homogeneous(load_source(args))
    K = KoszulCohomology(src.ideal, args.module)
    if args.p is not None and args.q is not None:
        ps, qs = [args.p], [args.q]
    else:
        B = betti_table(free_resolution(src.ideal))
        reg = max(j - p for p, j in B)
        ps = [args.p] if args.p is not None else list(range(B.length + 1))
        qs = [args.q] if args.q is not None else list(range(reg + 2))
    dims = {(p, q): K.dim(p, q) for q in qs for p in ps}
    if args.format == "kv":
        return Result("".join(f"koszul.{p}.{q} = {v}\n" for (p, q), v in sorted(dims.items())))
    w = max(len(str(v)) for v in [*dims.values(), *ps])
    w0 = max(len(f"{q}:") for q in qs)
    lines = [f"K_p,q({args.module}, S_1)", " " * w0 + "".join(f" {p:>{w}}" for p in ps)]
    for q in qs:
        lines.append(f"{q}:".rjust(w0) + "".join(f" {dims[(p, q)]:>{w}}" for p in ps))
    return Result("\n".join(lines) + "\n")


def cmd_corpus(args):
    if args.input:
        raise UsageError("corpus takes --corpus NAME, not --input")
    if not args.corpus:
        lines = []
        for name in NAMES:
            e = corpus_example(name)
            if args.format == "kv":
                lines += [f"{name}.{k} = {getattr(e, k)}" for k in ("n", "e", "r", "d")]
            else:
                lines.append(f"{name:<14} n={e.n} e={e.e} r={e.r} d={e.d}  {e.description}")
        return Result("\n".join(lines) + "\n")
    e = corpus_example(args.corpus)
    if args.format == "kv":
        lines = [f"{k} = {getattr(e, k)}" for k in ("name", "n", "e", "r", "d", "del_pezzo", "gorenstein")]
        lines += [f"generator.{k} = {g}" for k, g in enumerate(e.generators)]
        return Result("\n".join(lines) + "\n")
    return Result(format_ideal_file(e.ring, e.generators, e.description))


def cmd_verify_fixtures(args):
    directory = Path(args.dir) if args.dir else FIXTURE_DIR
    names = [args.corpus] if args.corpus else NAMES
    if args.corpus:
        corpus_example(args.corpus)
    if args.update:
        files = write_fixtures(directory, names)
        return Result(f"wrote {len(files)} files to {directory}\n")
    files, diffs = verify_fixtures(directory, names)
    lines = [f"checked {len(files)} files in {directory}"] + diffs
    lines.append("fixtures match" if not diffs else f"{len(diffs)} mismatches")
    return Result("\n".join(lines) + "\n", OK if not diffs else FAILED)


HANDLERS = {
    "resolve": cmd_resolve,
    "wedge": cmd_wedge,
    "theorem-check": cmd_theorem_check,
    "syzygy-scheme": cmd_syzygy_scheme,
    "koszul-dim": cmd_koszul_dim,
    "corpus": cmd_corpus,
    "verify-fixtures": cmd_verify_fixtures,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="wedgesyz", description="Exact syzygies, wedge compositions and syzygy schemes.")
    parser.add_argument("command", choices=COMMANDS)
    src = parser.add_argument_group("input")
    src.add_argument("--corpus", metavar="NAME", help="built-in example: " + ", ".join(NAMES))
    src.add_argument("--input", metavar="PATH", help="ideal file ('ring ...', 'ideal', one polynomial per line)")
    src.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    opts = parser.add_argument_group("options")
    opts.add_argument("--p", type=int, help="homological index (wedge, koszul-dim)")
    opts.add_argument("--q", type=int, help="internal degree (koszul-dim)")
    opts.add_argument("--module", choices=CONTEXTS, default="SX", help="koszul-dim module: S, S/I (SX) or I (IX)")
    opts.add_argument("--max-length", type=int, help="truncate the resolution (resolve)")
    opts.add_argument("--column", type=int, help="0-based column of D_{e-1} (syzygy-scheme)")
    opts.add_argument("--coeffs", metavar="c1,...,cN", help="coefficient row for the generator drop (syzygy-scheme)")
    opts.add_argument("--samples", type=int, help="also check the quadric-count bounds on this many random rows")
    opts.add_argument("--seed", type=int, default=0)
    opts.add_argument("--primitive", action="store_true", help="divide exterior matrices by their content")
    opts.add_argument("--format", choices=("text", "kv"), default="text")
    opts.add_argument("--dir", metavar="PATH", help="fixture directory (verify-fixtures)")
    opts.add_argument("--update", action="store_true", help="rewrite the fixtures (verify-fixtures)")
    return parser


def run(argv=None, out=None, err=None):
    """Parse argv, run one command, write the report; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        result = HANDLERS[args.command](args)
    except (InputError, ParseError, UsageError) as exc:
        err.write(f"wedgesyz: input error: {exc}\n")
        return BAD_INPUT
    except CorpusError as exc:
        err.write(f"wedgesyz: input error: {exc.args[0]}\n")
        return BAD_INPUT
    except (ResolutionError, DualityError, ExteriorError, KoszulError, SyzygySchemeError) as exc:
        err.write(f"wedgesyz: {exc}\n")
        return FAILED
    out.write(result.text)
    return result.status


def main():
    sys.exit(run())
