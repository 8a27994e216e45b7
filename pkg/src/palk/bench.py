"""Iteration-count gain experiments over the ten corpus families.

A cell is one (corpus, n, k); its three variant totals come from the same
generated string and the same LCE index, so gains are exact rationals of
deterministic integers.  Gain of test over base is (t_base - t_test) /
t_base; the CSV renders it with six decimals.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import Variant, string_iterations
from .lce import build_lce
from .symbols import CORPUS_KINDS, CorpusSpec, gen_corpus

PAPER_FRACTIONS = (0.01, 0.05, 0.1, 0.2, 0.4, 0.8)

VariantPair = Tuple[Variant, Variant]

DEFAULT_PAIRS: Tuple[VariantPair, ...] = (
    (Variant.ORIGINAL, Variant.IMPROVE1),
    (Variant.ORIGINAL, Variant.IMPROVE2),
    (Variant.IMPROVE1, Variant.IMPROVE2),
)


def paper_k_grid(n: int) -> Tuple[int, ...]:
    """Error budgets ceil(f * n) over the benchmark fractions, deduplicated."""
    if n < 1:
        raise ValueError(f"grid needs n >= 1, got {n}")
    return tuple(sorted({math.ceil(f * n) for f in PAPER_FRACTIONS}))


def gain(t_base: int, t_test: int) -> Fraction:
    """Relative iteration saving of test over base, as an exact fraction."""
    if t_base < 1:
        raise ValueError(f"base total {t_base} lacks even the step-1 iteration")
    if t_test > t_base:
        raise ValueError(
            f"test total {t_test} exceeds base total {t_base}; "
            "pruning never adds iterations, so this signals a scan defect"
        )
    return Fraction(t_base - t_test, t_base)


@dataclass(frozen=True)
class GainRow:
    """One benchmark cell: iteration totals and the gain of test over base."""

    corpus: str
    n: int
    k: int
    base: Variant
    test: Variant
    t_base: int
    t_test: int
    gain: Fraction


@dataclass(frozen=True)
class ExperimentConfig:
    """Benchmark sweep: corpora x k grid, one string per corpus."""

    corpora: Tuple[str, ...]
    n: int
    seed: int = 0
    ks: Optional[Tuple[int, ...]] = None
    pairs: Tuple[VariantPair, ...] = DEFAULT_PAIRS

    def k_grid(self) -> Tuple[int, ...]:
        return self.ks if self.ks else paper_k_grid(self.n)


def paper50(seed: int = 0) -> ExperimentConfig:
    """All ten corpora at n = 50 over the paper k grid."""
    return ExperimentConfig(CORPUS_KINDS, 50, seed)


def paper2500(seed: int = 0) -> ExperimentConfig:
    """All ten corpora at n = 2500 over the paper k grid."""
    return ExperimentConfig(CORPUS_KINDS, 2500, seed)


def run_gain_experiment(
    cfg: ExperimentConfig,
) -> Tuple[List[GainRow], List[str]]:
    """Totals and gains for every cell; infeasible corpora become warnings."""
    variants = sorted({v for pair in cfg.pairs for v in pair}, key=lambda v: v.value)
    rows: List[GainRow] = []
    warnings: List[str] = []
    for kind in cfg.corpora:
        try:
            s = gen_corpus(CorpusSpec(kind, cfg.n, cfg.seed))
        except ValueError as exc:
            warnings.append(f"skipping: {exc}")
            continue
        oracle = build_lce(s)
        for k in cfg.k_grid():
            totals: Dict[Variant, int] = {
                v: string_iterations(oracle, k, v) for v in variants
            }
            for base, test in cfg.pairs:
                rows.append(GainRow(
                    kind, cfg.n, k, base, test,
                    totals[base], totals[test],
                    gain(totals[base], totals[test]),
                ))
    return rows, warnings


CSV_HEADER = "corpus,n,k,base,test,t_base,t_test,gain"


def _sorted_rows(rows: Sequence[GainRow]) -> List[GainRow]:
    return sorted(rows, key=lambda r: (r.corpus, r.k))


def emit_csv(rows: Sequence[GainRow]) -> str:
    """CSV text, rows sorted by (corpus, k), gain with six decimals."""
    lines = [CSV_HEADER]
    for r in _sorted_rows(rows):
        lines.append(
            f"{r.corpus},{r.n},{r.k},{r.base.value},{r.test.value},"
            f"{r.t_base},{r.t_test},{float(r.gain):.6f}"
        )
    return "\n".join(lines) + "\n"


def emit_json(rows: Sequence[GainRow]) -> str:
    """JSON mirror of the CSV rows."""
    payload = [
        {
            "corpus": r.corpus, "n": r.n, "k": r.k,
            "base": r.base.value, "test": r.test.value,
            "t_base": r.t_base, "t_test": r.t_test,
            "gain": round(float(r.gain), 6),
        }
        for r in _sorted_rows(rows)
    ]
    return json.dumps(payload, indent=1) + "\n"


def trend_report(rows: Sequence[GainRow]) -> List[str]:
    """Non-fatal diagnostics: gain should rise with k and fall with n."""
    notes: List[str] = []
    by_cell: Dict[Tuple[str, Variant, Variant, int], List[GainRow]] = {}
    for r in rows:
        by_cell.setdefault((r.corpus, r.base, r.test, r.n), []).append(r)
    for (corpus, base, test, n), group in sorted(
        by_cell.items(), key=lambda kv: (kv[0][0], kv[0][1].value, kv[0][2].value, kv[0][3])
    ):
        group = sorted(group, key=lambda r: r.k)
        for lo, hi in zip(group, group[1:]):
            if hi.gain < lo.gain:
                notes.append(
                    f"{corpus} n={n} {base.value}->{test.value}: gain drops "
                    f"from {float(lo.gain):.6f} at k={lo.k} to "
                    f"{float(hi.gain):.6f} at k={hi.k}"
                )
    by_series: Dict[Tuple[str, Variant, Variant], Dict[int, List[GainRow]]] = {}
    for r in rows:
        by_series.setdefault((r.corpus, r.base, r.test), {}).setdefault(r.n, []).append(r)
    for (corpus, base, test), per_n in sorted(
        by_series.items(), key=lambda kv: (kv[0][0], kv[0][1].value, kv[0][2].value)
    ):
        if len(per_n) < 2:
            continue
        grids = {n: sorted(g, key=lambda r: r.k) for n, g in per_n.items()}
        sizes = {len(g) for g in grids.values()}
        if len(sizes) != 1:
            continue  # k grids not comparable position by position
        ns = sorted(grids)
        for slot in range(sizes.pop()):
            for a, b in zip(ns, ns[1:]):
                lo, hi = grids[a][slot], grids[b][slot]
                if hi.gain > lo.gain:
                    notes.append(
                        f"{corpus} {base.value}->{test.value}: gain rises from "
                        f"{float(lo.gain):.6f} at n={a} (k={lo.k}) to "
                        f"{float(hi.gain):.6f} at n={b} (k={hi.k})"
                    )
    return notes
