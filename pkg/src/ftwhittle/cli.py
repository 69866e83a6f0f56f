"""Command-line front end: ``ftwhittle <subcommand> ...``.

Exit codes: 0 success, 2 invalid input, 3 a check failed, 4 internal error
(a cycle in the connecting-map graph or ``d o d != 0``).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .braids import BraidError, make_torus_braid
from .counting import classify_survivor, count_bound_terms, formula_N, jnf_count
from .homology import ComplexError, close_and_build, euler_state_sum, homology, laurent_str
from .states import PLAIN, STANDARD, state_record
from .tl import TLError, TLWord, d_move_reduce, d_move_type, enumerate_jnf, reduce_to_jnf
from .verify import CHECKS, ConfigError, RunConfig, run_verify
from .whittler import CycleDetected, WhittleError, whittle

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_INTERNAL = 0, 2, 3, 4

log = logging.getLogger("ftwhittle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1-5"`` or ``"1,3,4"`` (parts may mix)."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _write_jsonl(path: Path, rows) -> int:
    count = 0
    with path.open("w") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
            count += 1
    return count


def cmd_whittle(args) -> int:
    b = make_torus_braid(args.n, args.k)
    wc = whittle(b)
    print(f"ft_{args.n}^{args.k}: {len(wc.cancelled)} isomorphisms, {len(wc.graph.edges)} edges, "
          f"{len(wc.all_survivors())} survivors")
    for h in sorted(wc.survivors):
        print(f"  h={h}: {len(wc.survivors[h])} survivors ({len(wc.survivor_states(h))} Kauffman states)")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_jsonl(out / "isomorphisms.jsonl", (iso.record() for iso in wc.cancelled))
        _write_jsonl(out / "edges.jsonl", ({"from": u, "to": v, "crossing": c} for u, v, c in wc.graph.edges))
        _write_jsonl(out / "survivors.jsonl",
                     ({**state_record(e, args.convention), "survivor": True} for e in wc.all_survivors()))
        print(f"wrote exports to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    try:
        cfg = RunConfig(parse_range(args.n), parse_range(args.k), checks, args.out, args.convention, args.verbose)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    report = run_verify(cfg)
    for r in report["results"]:
        status = " ".join(f"{name}={'pass' if c['passed'] else 'FAIL'}" for name, c in r["checks"].items())
        print(f"ft_{r['n']}^{r['k']}: {status}")
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
        print(f"wrote {out / 'report.json'}")
    if report["internal_error"]:
        return EXIT_INTERNAL
    if report["failed_checks"]:
        print("failed checks: " + ", ".join(report["failed_checks"]))
        return EXIT_FAILED
    return EXIT_OK


def cmd_count(args) -> int:
    if args.n < 2 or args.k < 1 or args.h < 0:
        raise UsageError("count needs n >= 2, k >= 1, h >= 0")
    t = count_bound_terms(args.n, args.k, args.h)
    alt = count_bound_terms(args.n, args.k, args.h, two_part_of=args.k)
    print(f"sum_m p(h,m)      = {t.partitions}")
    print(f"N(n,h)            = {t.jnf_words}  (JNF words of length h: {jnf_count(args.n, args.h)})")
    print(f"(p(n,2)+2) C_n    = {t.catalan_part}")
    print(f"total             = {t.total}")
    print(f"total with p(k,2) = {alt.total}")
    return EXIT_OK


def cmd_classify(args) -> int:
    src = sys.stdin if args.inp == "-" else open(args.inp)
    unclassified = 0
    out = sys.stdout if not args.out else open(args.out, "w")
    try:
        for line in src:
            if not line.strip():
                continue
            rec = json.loads(line)
            w = TLWord(args.n, tuple(rec["tl_word"]))
            form = classify_survivor(w)
            if form is None:
                rec["form"] = None
                unclassified += 1
            elif form.path is None:
                rec["form"] = {"variant": form.variant, "exponents": list(form.exponents),
                               "tails": [list(v) for v in form.tails]}
            else:
                rec["form"] = {"variant": form.variant, "moves": [d_move_type(m) for m in form.path.moves],
                               "jnf": list(form.path.final.gens)}
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    finally:
        if src is not sys.stdin:
            src.close()
        if out is not sys.stdout:
            out.close()
    return EXIT_FAILED if unclassified else EXIT_OK


def cmd_homology(args) -> int:
    b = make_torus_braid(args.n, args.k)
    cx = close_and_build(b, args.convention)
    hs = homology(cx)
    rows = hs.rows()
    if args.format == "json":
        print(json.dumps({"n": args.n, "k": args.k, "rows": rows,
                          "free_ranks": {str(h): r for h, r in hs.free_ranks.items()},
                          "torsion": {str(h): t for h, t in hs.torsion.items()}}, indent=2, sort_keys=True))
    else:
        print("h\tq\trank\ttorsion")
        for r in rows:
            print(f"{r['h']}\t{r['q']}\t{r['rank']}\t{','.join(f'Z/{t}' for t in r['torsion'])}")
    if args.open_euler:
        for pairing, poly in euler_state_sum(b, closed=False, convention=args.convention).items():
            print(f"# pairing {' '.join(map(str, pairing))}: {laurent_str(poly)}")
    return EXIT_OK


def cmd_tl(args) -> int:
    if args.action == "enumerate":
        for w in enumerate_jnf(args.n, args.h):
            print(w.to_text() or "1")
        return EXIT_OK
    try:
        w = TLWord(args.n, tuple(int(x) for x in args.word.split()))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    path = d_move_reduce(w) if args.d_moves else reduce_to_jnf(w)
    if path is None:
        print("no D1/D2/D3 path to Jones normal form")
        return EXIT_FAILED
    for k, word in enumerate(path.words):
        move = f"  [{path.moves[k - 1]}]" if k else ""
        print((word.to_text() or "1") + move)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ftwhittle", description="Whittle the Khovanov complex of torus braids ft_n^k.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nk(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--convention", choices=[PLAIN, STANDARD], default=PLAIN)

    sp = sub.add_parser("whittle", help="select isomorphisms and list survivors")
    nk(sp)
    sp.add_argument("--out", help="directory for JSON-lines exports")
    sp.set_defaults(func=cmd_whittle)

    sp = sub.add_parser("verify", help="run oracle checks over ranges of n and k")
    sp.add_argument("--n", required=True, help="e.g. 3, 2-4 or 2,4")
    sp.add_argument("--k", required=True)
    sp.add_argument("--checks", default=",".join(CHECKS), help=f"subset of {','.join(CHECKS)}")
    sp.add_argument("--out", help="directory for report.json")
    sp.add_argument("--convention", choices=[PLAIN, STANDARD], default=PLAIN)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("count", help="print the terms of the survivor bound")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("classify", help="annotate survivor records with their form")
    sp.add_argument("--in", dest="inp", required=True, help="survivors.jsonl or - for stdin")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("homology", help="integer Khovanov homology of the closure")
    nk(sp)
    sp.add_argument("--open-euler", action="store_true")
    sp.add_argument("--format", choices=["tsv", "json"], default="tsv")
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("tl", help="Temperley-Lieb rewriting")
    sp.add_argument("action", choices=["reduce", "enumerate"])
    sp.add_argument("word", nargs="?", default="", help='space-separated indices, e.g. "3 1 3"')
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--h", type=int, default=0, help="word length for enumerate")
    sp.add_argument("--d-moves", action="store_true", help="use only D1/D2/D3")
    sp.set_defaults(func=cmd_tl)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"ftwhittle: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, BraidError, TLError, WhittleError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"ftwhittle: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CycleDetected, ComplexError) as exc:
        print(f"ftwhittle: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
