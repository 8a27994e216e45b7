"""Command-line front end: find, bench, and expected subcommands.

All coordinates in output are 1-based inclusive.  Exit codes: 0 success,
1 usage error, 2 input/parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from . import bench as bench_mod
from . import expected as expected_mod
from .engine import Parity, Variant, render_script
from .palindromes import BOTH_PARITIES, ScanReport, scan_all
from .symbols import (
    CORPUS_KINDS,
    CorpusSpec,
    DNA_COMPLEMENT,
    IDENTITY,
    SymbolString,
    encode_text,
    gen_corpus,
)

_DNA_KINDS = ("dna", "dnap1", "dnap2", "dnap3")


class CliError(Exception):
    """Fatal command error carrying the process exit code."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    # usage problems are exit code 1 here, not argparse's default 2
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> _Parser:
    p = _Parser(
        prog="palk",
        description=(
            "Maximal approximate palindromes under k edit errors. "
            "All output coordinates are 1-based inclusive."
        ),
    )
    sub = p.add_subparsers(dest="cmd", required=True, metavar="{find,bench,expected}")

    f = sub.add_parser("find", help="list every maximal approximate palindrome")
    src = f.add_mutually_exclusive_group(required=True)
    src.add_argument("--text", help="literal input string")
    src.add_argument("--in", dest="path", help="input file, plain text or FASTA")
    src.add_argument("--corpus", choices=CORPUS_KINDS, help="generated input family")
    f.add_argument("--n", type=int, help="corpus length, with --corpus")
    f.add_argument("--seed", type=int, default=0, help="corpus seed (default 0)")
    f.add_argument("--format", choices=("auto", "text", "fasta"), default="auto",
                   help="input layout for --text/--in (default auto)")
    f.add_argument("--alphabet", choices=("auto", "dna", "ascii"), default="auto",
                   help="symbol encoding for plain text (default auto)")
    f.add_argument("--complement", action="store_true",
                   help="match a-t and c-g complements instead of equality")
    f.add_argument("-k", "--errors", dest="k", type=int, default=0,
                   help="error budget (default 0)")
    f.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    f.add_argument("--variant", choices=[v.value for v in Variant],
                   default=Variant.IMPROVE2.value)
    f.add_argument("--scripts", action="store_true",
                   help="append a run-length edit script column")
    f.add_argument("--include-trivial", action="store_true",
                   help="also scan the endpoint centers")
    f.add_argument("--record", type=int, help="1-based FASTA record index")
    f.add_argument("--output", choices=("tsv", "json"), default="tsv")

    b = sub.add_parser("bench", help="iteration-gain experiments over corpora")
    b.add_argument("--preset", choices=("paper50", "paper2500"))
    b.add_argument("--corpus", action="append", choices=CORPUS_KINDS,
                   help="corpus family, repeatable")
    b.add_argument("--n", type=int, help="string length")
    b.add_argument("--k", action="append", type=int,
                   help="error budget, repeatable (default: fraction grid)")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--output", choices=("csv", "json"), default="csv")

    e = sub.add_parser("expected", help="expected iteration totals over uniform strings")
    e.add_argument("--preset", choices=("fig9-12-desk",))
    e.add_argument("--n", type=int, help="string length")
    e.add_argument("--sigma", type=int, help="alphabet size")
    e.add_argument("--k", type=int, default=1, help="error budget (default 1)")
    e.add_argument("--method", choices=("exact", "montecarlo", "auto"), default="auto")
    e.add_argument("--samples", type=int, default=4000)
    e.add_argument("--seed", type=int, default=0)
    return p


def parse_fasta(text: str, record: Optional[int] = None) -> SymbolString:
    """Decode one FASTA record into DNA codes, reporting errors by line/column."""
    recs: List[List[Tuple[int, str]]] = []
    seen_header = False
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        if not seen_header:
            if not line.strip():
                continue
            if not line.startswith(">"):
                raise CliError(2, f"not FASTA: line {lineno} does not start with '>'")
            seen_header = True
            recs.append([])
            continue
        if line.startswith(">"):
            recs.append([])
        elif line.strip():
            recs[-1].append((lineno, line))
    if not recs:
        raise CliError(2, "FASTA input has no records")
    if record is None:
        if len(recs) > 1:
            raise CliError(2, f"input has {len(recs)} records; pass --record INDEX")
        idx = 0
    elif 1 <= record <= len(recs):
        idx = record - 1
    else:
        raise CliError(2, f"--record {record} outside 1..{len(recs)}")
    lut = {"a": 0, "c": 1, "g": 2, "t": 3}
    codes: List[int] = []
    for lineno, line in recs[idx]:
        for col, ch in enumerate(line, start=1):
            v = lut.get(ch.lower())
            if v is None:
                raise CliError(
                    2, f"invalid residue {ch!r} at line {lineno}, column {col}"
                )
            codes.append(v)
    if not codes:
        raise CliError(2, f"FASTA record {idx + 1} has an empty sequence")
    return SymbolString.of(codes)


def _resolve_input(args) -> Tuple[SymbolString, str]:
    """Input string plus the resolved alphabet name ('dna' or 'ascii')."""
    if args.corpus is not None:
        if args.n is None or args.n < 1:
            raise CliError(1, "--corpus needs --n >= 1")
        try:
            s = gen_corpus(CorpusSpec(args.corpus, args.n, args.seed))
        except ValueError as exc:
            raise CliError(1, str(exc))
        return s, ("dna" if args.corpus in _DNA_KINDS else "ascii")
    if args.n is not None:
        raise CliError(1, "--n only applies to --corpus input")
    if args.path is not None:
        try:
            with open(args.path, "rb") as fh:
                data = fh.read().decode("latin-1")
        except OSError as exc:
            raise CliError(2, f"cannot read {args.path}: {exc}")
    else:
        data = args.text
    is_fasta = args.format == "fasta" or (
        args.format == "auto" and data.lstrip()[:1] == ">"
    )
    if is_fasta:
        if args.alphabet == "ascii":
            raise CliError(1, "FASTA input is DNA; --alphabet ascii conflicts")
        return parse_fasta(data, args.record), "dna"
    if args.record is not None:
        raise CliError(1, "--record only applies to FASTA input")
    data = data.rstrip("\r\n")
    alphabet = args.alphabet
    if alphabet == "auto":
        alphabet = "dna" if data and all(ch in "ACGTacgt" for ch in data) else "ascii"
    try:
        return encode_text(data, alphabet), alphabet
    except ValueError as exc:
        raise CliError(2, str(exc))


def _find_rows(report: ScanReport, scripts: bool) -> List[List[str]]:
    rows = []
    for r in report.results:
        row = [str(r.c), r.parity.value, str(r.start), str(r.end),
               str(r.size), str(r.errors)]
        if scripts:
            row.append(render_script(r.script) or "-")
        rows.append(row)
    return rows


def cmd_find(args) -> int:
    if args.k < 0:
        raise CliError(1, f"error budget {args.k} is negative")
    s, alphabet = _resolve_input(args)
    if args.complement and alphabet != "dna":
        raise CliError(1, "--complement needs a DNA input")
    relation = DNA_COMPLEMENT if args.complement else IDENTITY
    parities = BOTH_PARITIES if args.parity == "both" else (Parity(args.parity),)
    report = scan_all(
        s, args.k, Variant(args.variant), parities, relation,
        want_script=args.scripts, include_trivial=args.include_trivial,
    )
    for w in report.warnings:
        print(f"palk: warning: {w}", file=sys.stderr)
    if args.output == "tsv":
        for row in _find_rows(report, args.scripts):
            sys.stdout.write("\t".join(row) + "\n")
        return 0
    doc = {
        "n": len(s),
        "k": args.k,
        "variant": args.variant,
        "parity": args.parity,
        "relation": "complement" if args.complement else "identity",
        "coordinates": "1-based inclusive",
        "results": [
            {
                "center": r.c, "parity": r.parity.value,
                "start": r.start, "end": r.end,
                "size": r.size, "errors": r.errors,
                **({"script": render_script(r.script)} if args.scripts else {}),
            }
            for r in report.results
        ],
    }
    sys.stdout.write(json.dumps(doc, indent=1) + "\n")
    return 0


def cmd_bench(args) -> int:
    explicit = args.corpus or args.n is not None or args.k
    if args.preset and explicit:
        raise CliError(1, "--preset conflicts with explicit --corpus/--n/--k")
    if args.preset == "paper50":
        cfg = bench_mod.paper50(args.seed)
    elif args.preset == "paper2500":
        cfg = bench_mod.paper2500(args.seed)
    else:
        if not args.corpus or args.n is None:
            raise CliError(1, "bench needs --preset, or --corpus and --n")
        if args.n < 1:
            raise CliError(1, f"--n {args.n} below 1")
        ks = tuple(args.k) if args.k else None
        if ks and any(k < 0 for k in ks):
            raise CliError(1, "error budgets must be >= 0")
        cfg = bench_mod.ExperimentConfig(tuple(args.corpus), args.n, args.seed, ks)
    rows, warnings = bench_mod.run_gain_experiment(cfg)
    for w in warnings:
        print(f"palk: warning: {w}", file=sys.stderr)
    if warnings and not args.preset:
        return 1
    emit = bench_mod.emit_csv if args.output == "csv" else bench_mod.emit_json
    sys.stdout.write(emit(rows))
    return 0


def cmd_expected(args) -> int:
    try:
        if args.preset:
            if args.n is not None or args.sigma is not None:
                raise CliError(1, "--preset conflicts with explicit --n/--sigma")
            cells = expected_mod.desk_sweep(args.samples, args.seed)
            reports = [expected_mod.expected_gain(cfg, b, t) for cfg, b, t in cells]
        else:
            if args.n is None or args.sigma is None:
                raise CliError(1, "expected needs --preset, or --n and --sigma")
            cfg = expected_mod.ExpectedConfig(
                args.n, args.sigma, args.k,
                method=args.method, samples=args.samples, seed=args.seed,
            )
            reports = [
                expected_mod.expected_gain(cfg, b, t)
                for b, t in expected_mod.DEFAULT_PAIRS
            ]
    except ValueError as exc:
        raise CliError(1, str(exc))
    for note in expected_mod.trend_report(reports):
        print(f"palk: trend: {note}", file=sys.stderr)
    sys.stdout.write(expected_mod.emit_csv(reports))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "find":
            return cmd_find(args)
        if args.cmd == "bench":
            return cmd_bench(args)
        return cmd_expected(args)
    except CliError as exc:
        print(f"palk: {exc.message}", file=sys.stderr)
        return exc.code
    except BrokenPipeError:
        return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
