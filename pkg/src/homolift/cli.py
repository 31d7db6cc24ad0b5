"""Command-line front end: ``homolift <subcommand> ...``.

Exit codes: 0 success, 1 a verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from . import cover, mkcensus
from .gfp import is_prime
from .graphcore import mk_tree, read_edge_list
from .invariant import EnumerationLimit, full_lattice

GENERATOR_NAMES = ("rho", "sigma", "psi", "tau", "eta", "omega")


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _residues(m) -> str:
    width = len(str(m.p - 1))
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in m.rows)


def cmd_census(args, out) -> int:
    report = mkcensus.full_census(args.p)
    if args.json:
        out.write(mkcensus.render_json(report, all_classes=args.all) + "\n")
    else:
        out.write(mkcensus.render_text(report) + "\n")
    return 0 if report.matches_formula else 1


def cmd_verify(args, out) -> int:
    rows = []
    out.write(f"{'p':>4} {'computed':>9} {'formula':>8}  match\n")
    for q in mkcensus.primes_upto(args.pmax):
        r = mkcensus.full_census(q)
        row = mkcensus.FormulaRow(q, r.counts["minimal_semisymmetric"], r.formula_expected)
        rows.append(row)
        out.write(f"{q:>4} {row.computed:>9} {row.expected:>8}  {'yes' if row.match else 'NO'}\n")
        out.flush()
    good = sum(r.match for r in rows)
    if good == len(rows):
        out.write(f"all {len(rows)} primes match\n")
        return 0
    out.write(f"{good} of {len(rows)} primes match\n")
    return 1


def cmd_matrices(args, out) -> int:
    mats = mkcensus.paper_matrices(args.p)
    blocks = [f"{letter} mod {args.p}:\n{_residues(m)}" for letter, m in mats.items()]
    out.write("\n\n".join(blocks) + "\n")
    return 0


def cmd_subgroups(args, out) -> int:
    entries = mkcensus.census_subgroups()
    out.write(f"{'name':<6} {'order':>5}  vertex edge arc  notes\n")
    for e in entries:
        f = e.flags
        notes = []
        if e.minimal_vertex_transitive:
            notes.append("minimal vertex-transitive")
        if e.minimal_edge_transitive:
            notes.append("minimal edge-transitive")
        if e.maximal_semisymmetric:
            notes.append("maximal edge-not-vertex-transitive")
        if f.vertex_regular:
            notes.append("vertex-regular")
        if f.arc_regular:
            notes.append("arc-regular")
        yn = lambda b: "yes" if b else "no"  # noqa: E731
        out.write(
            f"{e.name or '-':<6} {e.order:>5}  {yn(f.vertex):>6} {yn(f.edge):>4} {yn(f.arc):>3}  {', '.join(notes)}\n"
        )
    out.write(f"{len(entries)} proper transitive subgroups\n")
    return 0


def _class_voltage(p: int, name: str):
    report = mkcensus.full_census(p)
    try:
        cls = report.find(name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    va = cover.voltage_for_subspace(cls.representative, mk_tree())
    return cls, va


def cmd_cover(args, out) -> int:
    cls, va = _class_voltage(args.p, args.cls)
    dg = cover.derive(va)
    if args.format == "dot":
        args.out.parent.mkdir(parents=True, exist_ok=True)
        dg.write_dot(args.out)
        extra = ""
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        mp = dg.write_edges(args.out)
        extra = f"; mapping table in {mp}"
    connected = dg.connected
    if dg.num_vertices <= 200_000:
        connected = dg.to_graph().is_connected()
    state = "connected" if connected else "disconnected"
    out.write(f"{cls.name}: {dg.num_vertices} vertices, {dg.num_edges} edges, {state}\n")
    out.write(f"wrote {args.out}{extra}\n")
    return 0 if connected else 1


def cmd_lift(args, out) -> int:
    cls, va = _class_voltage(args.p, args.cls)
    a = mkcensus.generators()[args.auto]
    rep = mkcensus.corpus_context(args.p).rep
    by_matrix = cover.lifts_by_criterion(a, cls.representative, rep)
    res = cover.explicit_lift(a, cover.derive(va))
    out.write(f"{cls.name} at p={args.p}, automorphism {args.auto}\n")
    out.write(f"  homology criterion: {'lifts' if by_matrix else 'does not lift'}\n")
    out.write(f"  explicit lift:      {'lifts' if res.exists else 'does not lift'}\n")
    agree = by_matrix == res.exists
    out.write(f"  {'agree' if agree else 'DISAGREE'}\n")
    return 0 if agree else 1


def cmd_graph(args, out) -> int:
    g = read_edge_list(args.file)
    if not g.is_connected():
        raise UsageError(f"{args.file} is not connected")
    out.write(f"vertices {g.n}, edges {len(g.edges)}, cycle rank {len(g.edges) - g.n + 1}\n")
    out.write(f"bipartite {'yes' if g.is_bipartite() else 'no'}, girth {g.girth()}\n")
    res = cover.naive_aut(g, budget=args.budget)
    if not res.conclusive:
        out.write(f"automorphism search inconclusive after {res.nodes} nodes\n")
        return 1
    out.write(f"automorphism group order {res.order}\n")
    out.write(f"vertex orbits {sorted(len(o) for o in res.vertex_orbits)}\n")
    out.write(f"edge orbits {sorted(len(o) for o in res.edge_orbits)}\n")
    kind = "semisymmetric" if res.semisymmetric else (
        "vertex- and edge-transitive" if res.vertex_transitive and res.edge_transitive else "neither"
    )
    if res.vertex_transitive and not res.edge_transitive:
        kind = "vertex-transitive only"
    out.write(f"{kind}\n")
    return 0


def cmd_selftest(args, out) -> int:
    failures = 0

    def report(label: str, ok: bool, secs: float):
        nonlocal failures
        failures += not ok
        out.write(f"{'PASS' if ok else 'FAIL'}  {label}  ({secs:.1f}s)\n")
        out.flush()

    t = time.perf_counter()
    try:
        for q in (2, 3, 5, 7, 13, 97):
            mkcensus.paper_matrices(q)
        ok = True
    except mkcensus.GoldenMismatch as exc:
        out.write(str(exc) + "\n")
        ok = False
    report("golden matrices at p in {2,3,5,7,13,97}", ok, time.perf_counter() - t)

    t = time.perf_counter()
    lattice = full_lattice(mkcensus.edge_matrices(2))
    proper = {s for s in lattice if 0 < s.dim < mkcensus.RANK}
    tabulated = {c.subspace for c in mkcensus.closed_form_subspaces(2)}
    report("p=2 lattice: 8 members, proper ones are W2..W7", len(lattice) == 8 and proper == tabulated,
           time.perf_counter() - t)

    for q in (3, 5):
        t = time.perf_counter()
        rep = mkcensus.corpus_context(q).rep
        td = mk_tree()
        gens = mkcensus.generators()
        ok = True
        for s in mkcensus.closed_form_lattice(q):
            if s.dim == 0:
                continue
            dg = cover.derive(cover.voltage_for_subspace(s, td))
            for a in gens.values():
                ok &= cover.lifts_by_criterion(a, s, rep) == cover.explicit_lift(a, dg).exists
        report(f"lift oracles agree on every invariant subspace at p={q}", ok, time.perf_counter() - t)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homolift", description="Elementary abelian covers of GP(8, 3) via invariant subspaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="classify minimal semisymmetric covers for one prime")
    c.add_argument("--p", type=_prime, required=True)
    c.add_argument("--json", action="store_true", help="machine-readable output")
    c.add_argument("--all", action="store_true", help="include every class in the JSON output")
    c.set_defaults(func=cmd_census)

    c = sub.add_parser("verify", help="compare census counts with the closed count formula")
    c.add_argument("--pmax", type=int, required=True)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("matrices", help="print the homology matrices R, S, P, T, E, O mod p")
    c.add_argument("--p", type=_prime, required=True)
    c.set_defaults(func=cmd_matrices)

    c = sub.add_parser("subgroups", help="transitive subgroups of Aut GP(8, 3)")
    c.set_defaults(func=cmd_subgroups)

    c = sub.add_parser("cover", help="build and export the cover of a census class")
    c.add_argument("--p", type=_prime, required=True)
    c.add_argument("--class", dest="cls", required=True, help="class name as printed by 'census', or <family>_min")
    c.add_argument("--out", type=Path, required=True)
    c.add_argument("--format", choices=("edges", "dot"), default="edges")
    c.set_defaults(func=cmd_cover)

    c = sub.add_parser("lift", help="run both lift tests for one automorphism")
    c.add_argument("--p", type=_prime, required=True)
    c.add_argument("--class", dest="cls", required=True)
    c.add_argument("--auto", choices=GENERATOR_NAMES, required=True)
    c.set_defaults(func=cmd_lift)

    c = sub.add_parser("graph", help="automorphism summary of a graph given as an edge-list file")
    c.add_argument("file", type=Path)
    c.add_argument("--budget", type=int, default=2_000_000)
    c.set_defaults(func=cmd_graph)

    c = sub.add_parser("selftest", help="golden matrices, p=2 lattice and lift-oracle agreement")
    c.set_defaults(func=cmd_selftest)
    return ap


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "pmax", None) is not None and not 2 <= args.pmax <= mkcensus.DEFAULT_PMAX:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"homolift: --pmax must lie in 2..{mkcensus.DEFAULT_PMAX}\n")
        return 2
    if getattr(args, "p", None) is not None and args.p > mkcensus.DEFAULT_PMAX:
        sys.stderr.write(f"homolift: p must not exceed {mkcensus.DEFAULT_PMAX}\n")
        return 2
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"homolift: {exc}\n")
        return 2
    except (mkcensus.GoldenMismatch, mkcensus.CrossCheckError) as exc:
        sys.stderr.write(f"homolift: verification failed: {exc}\n")
        return 1
    except (EnumerationLimit, OSError, ValueError) as exc:
        sys.stderr.write(f"homolift: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
