"""Command-line interface: `cohom`.

Subcommands
    table      per-degree dim/rank/Betti table of one weight (TSV; optional PNG)
    generator  export a cohomology generator as a cochain file
    factorize  wedge-factorization verdict for one even weight
    export     write a basis / coboundary matrix / echelon basis to a file
    selftest   fast end-to-end checks on small weights

Global options --cache-dir, --jobs and --config apply to every subcommand.
Results are independent of --jobs; it only parallelizes shape blocks.
"""

import argparse
import sys
from typing import Dict, Optional

from . import serialize
from .pipeline import (Workspace, cohomology_table, factorize,
                       feasible_degrees, generator)


def parse_config(path: str) -> Dict[str, str]:
    """Read a `key = value` config file; '#' starts a comment."""
    out: Dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("%s:%d: expected 'key = value', got %r"
                                 % (path, lineno, raw.rstrip()))
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def parse_degrees(spec: str) -> range:
    """Parse 'A..B' (inclusive) or a single degree 'A'."""
    if ".." in spec:
        a, b = spec.split("..", 1)
        return range(int(a), int(b) + 1)
    m = int(spec)
    return range(m, m + 1)


def _write_or_print(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plot_table(table, path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    degrees = [r.degree for r in table.rows]
    dims = [r.dim for r in table.rows]
    bettis = [r.betti for r in table.rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar([d - 0.2 for d in degrees], dims, width=0.4, label="dim C^m")
    ax.bar([d + 0.2 for d in degrees], bettis, width=0.4, label="Betti")
    ax.set_xlabel("degree m")
    ax.set_xticks(degrees)
    ax.set_title("%s%s complex, weight %d"
                 % (table.algebra, " (relative)" if table.relative else "",
                    table.weight))
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def cmd_table(args, ws: Workspace) -> int:
    degrees = parse_degrees(args.degrees) if args.degrees else None
    table = cohomology_table(args.algebra, args.weight, not args.absolute,
                             degrees=degrees, workspace=ws,
                             time_budget=args.time_budget)
    _write_or_print(table.to_text(), args.out)
    if args.plot:
        _plot_table(table, args.plot)
    return 0


def cmd_generator(args, ws: Workspace) -> int:
    gens = generator(args.algebra, args.weight, args.degree, workspace=ws)
    if not gens:
        sys.stderr.write("cohomology is zero at (m=%d, w=%d)\n"
                         % (args.degree, args.weight))
        return 1
    if args.index > len(gens):
        sys.stderr.write("only %d generators at (m=%d, w=%d)\n"
                         % (len(gens), args.degree, args.weight))
        return 1
    h = gens[args.index - 1]
    if args.out:
        serialize.export_cochain(h, args.out)
    else:
        sys.stdout.write("cochain weight=%d degree=%d terms=%d\n"
                         % (h.weight, h.degree, len(h.terms)))
        for word in sorted(h.terms):
            sys.stdout.write(serialize.term_str(word, h.terms[word]) + "\n")
    return 0


def cmd_factorize(args, ws: Workspace) -> int:
    report = factorize(args.weight, degree=args.degree, workspace=ws,
                       time_budget=args.time_budget)
    _write_or_print(report.to_text(), args.out)
    if args.expect and report.verdict != args.expect:
        sys.stderr.write("expected verdict %r, got %r\n"
                         % (args.expect, report.verdict))
        return 1
    return 0


def cmd_export(args, ws: Workspace) -> int:
    algebra, w, m, rel = args.algebra, args.weight, args.degree, not args.absolute
    if args.what == "basis":
        serialize.export_basis(ws.basis(algebra, w, m, rel), args.out)
    elif args.what == "matrix":
        cm = ws.matrix(algebra, w, m, rel)
        if cm is None:
            sys.stderr.write("coboundary out of (m=%d, w=%d) is the zero map "
                             "between zero-dimensional spaces\n" % (m, w))
            return 1
        serialize.export_matrix(cm.matrix, args.out)
    elif args.what == "image-gb":
        serialize.export_echelon(ws.image_gb(algebra, w, m, rel), args.out)
    elif args.what == "kernel-gb":
        serialize.export_echelon(ws.kernel_gb(algebra, w, m, rel), args.out)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(args.what)
    return 0


def cmd_selftest(args, ws: Workspace) -> int:
    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print("%-44s %s" % (name, "ok" if ok else "FAIL"))
        if not ok:
            failures += 1

    from .coboundary import apply_d
    from .pipeline import omega_cochain

    check("d0(omega) = 0", apply_d(omega_cochain(), "d0").is_zero())

    t8 = cohomology_table("ham", 8, workspace=ws)
    check("weight-8 ham Betti numbers nonnegative",
          all(r.betti >= 0 for r in t8.rows))
    check("weight-8 ham Betti nonzero somewhere",
          any(r.betti for r in t8.rows))

    for algebra, w in (("ham", 6), ("ham0", 10)):
        ok = True
        for m in feasible_degrees(algebra, w):
            a = ws.matrix(algebra, w, m)
            b = ws.matrix(algebra, w, m + 1)
            if a is not None and b is not None and not b.matrix.compose(a.matrix).is_zero():
                ok = False
        check("d^2 = 0 on %s weight %d" % (algebra, w), ok)

    rep = factorize(10, workspace=ws)
    check("factorize(10) verdict = isomorphism", rep.verdict == "isomorphism")

    t10 = cohomology_table("ham0", 10, workspace=ws)
    check("rank consistency (rank_out <= dim)",
          all(r.rank_out <= r.dim and r.rank_in <= r.dim for r in t10.rows))

    print("selftest: %d failure(s)" % failures)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cohom",
                                description="Weight-graded relative cohomology "
                                            "of formal Hamiltonian vector "
                                            "fields on the plane.")
    p.add_argument("--cache-dir", default=None,
                   help="directory for on-disk basis/matrix checkpoints")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for shape blocks (result-invariant)")
    p.add_argument("--config", default=None,
                   help="'key = value' file with defaults (cache_dir, jobs, "
                        "time_budget)")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="dim/rank/Betti table of one weight")
    t.add_argument("--algebra", choices=("ham", "ham0"), required=True)
    t.add_argument("--weight", type=int, required=True)
    t.add_argument("--degrees", default=None, metavar="A..B",
                   help="inclusive degree range (default: all nonzero degrees)")
    t.add_argument("--absolute", action="store_true",
                   help="drop the relative (no degree-2 part) condition")
    t.add_argument("--time-budget", type=float, default=None,
                   help="seconds before remaining degrees become explicit gaps")
    t.add_argument("--out", default=None, help="write TSV here instead of stdout")
    t.add_argument("--plot", default=None, metavar="PNG",
                   help="also render a bar chart to this file")
    t.set_defaults(func=cmd_table)

    g = sub.add_parser("generator", help="export a cohomology generator")
    g.add_argument("--algebra", choices=("ham", "ham0"), required=True)
    g.add_argument("--weight", type=int, required=True)
    g.add_argument("--degree", type=int, required=True)
    g.add_argument("--index", type=int, default=1,
                   help="1-based generator index when Betti > 1")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_generator)

    f = sub.add_parser("factorize", help="wedge-factorization verdict")
    f.add_argument("--weight", type=int, required=True,
                   help="source weight (even); target weight is weight - 2")
    f.add_argument("--degree", type=int, default=None,
                   help="source degree (default: scan for the Betti-1 degree)")
    f.add_argument("--time-budget", type=float, default=None)
    f.add_argument("--expect", choices=("isomorphism", "trivial",
                                        "indeterminate"), default=None,
                   help="exit nonzero unless the verdict matches (for CI)")
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_factorize)

    e = sub.add_parser("export", help="write a basis, matrix or echelon basis")
    e.add_argument("--what", choices=("basis", "matrix", "image-gb",
                                      "kernel-gb"), required=True)
    e.add_argument("--algebra", choices=("ham", "ham0"), required=True)
    e.add_argument("--weight", type=int, required=True)
    e.add_argument("--degree", type=int, required=True)
    e.add_argument("--absolute", action="store_true")
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_export)

    s = sub.add_parser("selftest", help="fast end-to-end checks")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        cfg = parse_config(args.config)
        if args.cache_dir is None and "cache_dir" in cfg:
            args.cache_dir = cfg["cache_dir"]
        if args.jobs == 1 and "jobs" in cfg:
            args.jobs = int(cfg["jobs"])
        if getattr(args, "time_budget", None) is None and "time_budget" in cfg:
            if hasattr(args, "time_budget"):
                args.time_budget = float(cfg["time_budget"])
    ws = Workspace(cache_dir=args.cache_dir, jobs=args.jobs)
    return args.func(args, ws)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
