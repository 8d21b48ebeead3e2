"""Command-line entry point.

Exit codes: 0 success, 1 unexpected failure, 2 input or usage error,
3 Jacobi / derivation failure, 4 validation failure (non-closed or degenerate
structure, failed precondition, declared flag that does not hold).
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from .cohomology import cohomology
from .corpus import AlgebraSpec, CORPUS, parse, registry
from .errors import CdgaError, TopologyInputError
from .exterior import format_form
from .massey import massey_scan
from .report import report
from .tables import render as render_tables, rows as table_rows, verdict_report
from .topology import AutomorphismAction, betti_vector, blowup_betti, mapping_torus_betti


def load_spec(source: str) -> AlgebraSpec:
    """``@name`` is a registry entry, ``-`` is stdin, anything else a file path."""
    if source.startswith("@"):
        return registry(source[1:])
    if source == "-":
        return parse(sys.stdin.read())
    path = Path(source)
    return parse(path.read_text(encoding="utf-8"), default_name=path.stem)


def parse_betti(text: str) -> tuple[int, ...]:
    parts = [p for p in re.split(r"[\s,()\[\]]+", text) if p]
    try:
        return betti_vector([int(p) for p in parts])
    except ValueError:
        raise TopologyInputError(f"cannot read a Betti vector from {text!r}") from None


def parse_action(text: str) -> dict[int, list[list[Fraction]]]:
    """Blocks introduced by ``degree k`` followed by rows of rationals."""
    mats: dict[int, list[list[Fraction]]] = {}
    current: list[list[Fraction]] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"degree\s+(\d+)", line)
        if m:
            k = int(m.group(1))
            if k in mats:
                raise TopologyInputError(f"line {lineno}: degree {k} given twice")
            current = mats[k] = []
            continue
        if current is None:
            raise TopologyInputError(f"line {lineno}: matrix row before any 'degree' line")
        try:
            current.append([Fraction(x) for x in line.replace(",", " ").split()])
        except (ValueError, ZeroDivisionError):
            raise TopologyInputError(f"line {lineno}: bad matrix row {line!r}") from None
    return mats


def _out(lines) -> None:
    sys.stdout.write("".join(line + "\n" for line in lines))


def cmd_report(args) -> int:
    spec = load_spec(args.source)
    limit = args.massey_limit or None
    rep = report(spec, args.max_degree, representatives=not args.no_representatives, massey_limit=limit)
    sys.stdout.write(rep.render(machine=args.machine))
    return 0


def cmd_betti(args) -> int:
    spec = load_spec(args.source)
    r = cohomology(spec.cdga())
    lines = [f"betti = [{', '.join(map(str, r.betti))}]"]
    for k in range(r.n + 1):
        lines.append(f"H{k} = [{', '.join(format_form(f) for f in r.basis(k))}]")
    _out(lines)
    return 0


def cmd_lefschetz(args) -> int:
    spec = load_spec(args.source)
    rep = report(spec, representatives=False, massey_limit=1)
    if rep.lefschetz is None:
        _out([f"structure = {rep.structure}", "no symplectic or cosymplectic structure given"])
        return 0
    lines = [f"structure = {rep.structure}", f"kind = {rep.lefschetz_kind}"]
    lines += rep.lefschetz.lines()
    if rep.one_lefschetz is not None:
        lines.append(f"one_lefschetz = {'yes' if rep.one_lefschetz else 'no'}")
    _out(lines)
    return 0


def cmd_massey(args) -> int:
    spec = load_spec(args.source)
    r = cohomology(spec.cdga())
    found = massey_scan(r, args.max_degree, args.limit or None)
    _out([m.line(r) for m in found] or ["no nonvanishing triple products"])
    return 0


def cmd_blowup(args) -> int:
    b = blowup_betti(parse_betti(args.ambient), parse_betti(args.sub), args.codim)
    _out([f"betti = [{', '.join(map(str, b))}]"])
    return 0


def cmd_mapping_torus(args) -> int:
    b = parse_betti(args.betti)
    mats = parse_action(Path(args.action).read_text(encoding="utf-8"))
    if 0 not in mats and b[0] == 1:
        mats[0] = [[Fraction(1)]]
    out = mapping_torus_betti(b, AutomorphismAction.from_lists(mats))
    _out([f"betti = [{', '.join(map(str, out))}]"])
    return 0


def cmd_corpus(args) -> int:
    if not (args.all or args.tables):
        _out(CORPUS)
        return 0
    start = time.perf_counter()
    reports = {}
    lines = []
    if args.all:
        for name in CORPUS:
            rep = verdict_report(name)
            reports[name] = rep
            lef = "-" if rep.lefschetz is None else ("yes" if rep.lefschetz.lefschetz_property else "no")
            lines.append(
                f"{name}: betti [{', '.join(map(str, rep.betti))}], structure {rep.structure}, "
                f"lefschetz {lef}, formality {rep.formality.verdict}"
            )
    if args.tables:
        if lines:
            lines.append("")
        lines += render_tables(table_rows(reports)).splitlines()
    if args.timing:
        lines.append(f"elapsed {time.perf_counter() - start:.2f}s")
    _out(lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cdgakit", description="Cohomology, Lefschetz maps and Massey products of CDGA models.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", help="full analysis of one model")
    r.add_argument("source", help="spec file, '-' for stdin, or @name for a registry entry")
    r.add_argument("--machine", action="store_true", help="key = value output")
    r.add_argument("--max-degree", type=int, default=None, help="Massey scan degree cap")
    r.add_argument("--massey-limit", type=int, default=50, help="list at most this many triples (0: all)")
    r.add_argument("--no-representatives", action="store_true")
    r.set_defaults(func=cmd_report)

    b = sub.add_parser("betti", help="Betti numbers and representatives")
    b.add_argument("source")
    b.set_defaults(func=cmd_betti)

    lf = sub.add_parser("lefschetz", help="Lefschetz maps degree by degree")
    lf.add_argument("source")
    lf.set_defaults(func=cmd_lefschetz)

    m = sub.add_parser("massey", help="scan for nonvanishing triple Massey products")
    m.add_argument("source")
    m.add_argument("--max-degree", type=int, default=None)
    m.add_argument("--limit", type=int, default=0, help="stop after this many hits (0: no limit)")
    m.set_defaults(func=cmd_massey)

    bl = sub.add_parser("blowup", help="Betti numbers of a blow-up")
    bl.add_argument("--ambient", required=True, help="Betti vector of X, e.g. 1,0,1,0,1")
    bl.add_argument("--sub", required=True, help="Betti vector of the submanifold Y")
    bl.add_argument("--codim", required=True, type=int, help="real codimension of Y (even)")
    bl.set_defaults(func=cmd_blowup)

    mt = sub.add_parser("mapping-torus", help="Betti numbers of a mapping torus")
    mt.add_argument("betti", help="Betti vector of the fiber")
    mt.add_argument("--action", required=True, help="file of 'degree k' blocks with matrix rows")
    mt.set_defaults(func=cmd_mapping_torus)

    c = sub.add_parser("corpus", help="registry entries and verdict tables")
    c.add_argument("--all", action="store_true", help="analyse every registry entry")
    c.add_argument("--tables", action="store_true", help="render the verdict tables")
    c.add_argument("--timing", action="store_true", help="print elapsed time")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CdgaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: [corpus_cli] {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: [corpus_cli] {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
