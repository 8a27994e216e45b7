"""Whole-string scanning for maximal approximate palindromes.

A length-n string has even centers c = 1..n-1 and odd centers c = 2..n-1;
the leftover centers (odd c = 1, both parities at c = n) admit only runs
of pure insertions or deletions, so they are skipped unless explicitly
requested.  Grid endpoints (p*, q*) translate to the substring
S[u-p*+1 .. c+q*] of size p*+q*, plus one for the odd center character.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .engine import (
    CenterConfig,
    EditOp,
    EditScript,
    IterationStats,
    Parity,
    Variant,
    k_differences_scan,
    reconstruct_script,
)
from .lce import LceOracle, build_lce
from .symbols import IDENTITY, MatchRelation, SymbolString

BOTH_PARITIES = (Parity.EVEN, Parity.ODD)


@dataclass(frozen=True)
class PalindromeResult:
    """One maximal approximate palindrome in 1-based inclusive coordinates."""

    c: int
    parity: Parity
    p_star: int
    q_star: int
    start: int
    end: int
    size: int
    errors: int
    script: Optional[EditScript] = None


@dataclass(frozen=True)
class ScanReport:
    """scan_all output: results ordered by (parity, center), plus totals."""

    results: Tuple[PalindromeResult, ...]
    stats: IterationStats
    warnings: Tuple[str, ...] = ()


def is_trivial_center(n: int, c: int, parity) -> bool:
    """True for the centers whose scan degenerates to pure indels."""
    parity = Parity(parity)
    if parity is Parity.EVEN:
        return c == n
    return c == 1 or c == n


def maximal_at_center(
    oracle: LceOracle,
    c: int,
    parity,
    k: int,
    variant: Variant = Variant.IMPROVE2,
    want_script: bool = False,
    include_trivial: bool = False,
) -> PalindromeResult:
    """Maximal approximate palindrome at one center, as a string extent."""
    n = oracle.n
    parity = Parity(parity)
    cfg = CenterConfig.of(n, c, parity)
    if is_trivial_center(n, c, parity) and not include_trivial:
        raise ValueError(
            f"center {c} ({parity.value}) is trivial for length {n}; "
            "pass include_trivial to scan it anyway"
        )
    out = k_differences_scan(oracle, cfg, k, variant, want_script)
    script = reconstruct_script(out) if want_script else None
    odd = parity is Parity.ODD
    return PalindromeResult(
        c=c,
        parity=parity,
        p_star=out.i_star,
        q_star=out.j_star,
        start=cfg.x - out.i_star + 1,
        end=c + out.j_star,
        size=out.i_star + out.j_star + (1 if odd else 0),
        errors=out.e_best,
        script=script,
    )


def _center_list(
    n: int, parities: Sequence[Parity], include_trivial: bool
) -> Tuple[Tuple[int, Parity], ...]:
    out = []
    for parity in BOTH_PARITIES:  # fixed order keeps output deterministic
        if parity not in parities:
            continue
        for c in range(1, n + 1):
            if is_trivial_center(n, c, parity) and not include_trivial:
                continue
            out.append((c, parity))
    return tuple(out)


def default_workers() -> int:
    """Worker count from PALK_THREADS; 1 when unset or unusable."""
    try:
        return max(1, int(os.environ.get("PALK_THREADS", "1")))
    except ValueError:
        return 1


def scan_all(
    s: SymbolString,
    k: int,
    variant: Variant = Variant.IMPROVE2,
    parities: Sequence[Parity] = BOTH_PARITIES,
    relation: MatchRelation = IDENTITY,
    want_script: bool = False,
    include_trivial: bool = False,
    workers: Optional[int] = None,
) -> ScanReport:
    """All maximal approximate palindromes of s for the requested parities."""
    n = len(s)
    parities = tuple(Parity(p) for p in parities)
    centers = _center_list(n, parities, include_trivial)
    if not centers:
        return ScanReport(
            (), IterationStats(0, 0),
            (f"string of length {n} has no nontrivial centers",),
        )
    oracle = build_lce(s, relation)

    def one(item: Tuple[int, Parity]) -> Tuple[PalindromeResult, IterationStats]:
        c, parity = item
        cfg = CenterConfig.of(n, c, parity)
        out = k_differences_scan(oracle, cfg, k, variant, want_script)
        script = reconstruct_script(out) if want_script else None
        res = PalindromeResult(
            c, parity, out.i_star, out.j_star,
            cfg.x - out.i_star + 1, c + out.j_star,
            out.i_star + out.j_star + (1 if parity is Parity.ODD else 0),
            out.e_best, script,
        )
        return res, out.stats

    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1:
        done = [one(item) for item in centers]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            done = list(pool.map(one, centers))
    total = sum(st.iterations for _, st in done)
    worst = max(st.max_lifetime for _, st in done)
    return ScanReport(tuple(r for r, _ in done), IterationStats(total, worst))


def _replay(
    s: SymbolString, r: PalindromeResult, relation: MatchRelation
) -> Tuple[bool, str]:
    if r.script is None:
        return False, "result carries no script"
    n = len(s)
    u = r.c if r.parity is Parity.EVEN else r.c - 1
    left = tuple(reversed(s.codes[:u]))
    right = s.codes[r.c:]
    x, y = len(left), len(right)
    p = q = 0
    errors = 0
    for step, op in enumerate(r.script, start=1):
        if op is EditOp.MATCH:
            if p >= x or q >= y:
                return False, f"op {step} (M) walks off the arms at ({p}, {q})"
            if not relation.matches(left[p], right[q]):
                return False, f"op {step} (M) pairs non-matching symbols"
            p += 1
            q += 1
        elif op is EditOp.SUB:
            if p >= x or q >= y:
                return False, f"op {step} (S) walks off the arms at ({p}, {q})"
            p += 1
            q += 1
            errors += 1
        elif op is EditOp.INS:
            if q >= y:
                return False, f"op {step} (I) walks off the right arm"
            q += 1
            errors += 1
        else:
            if p >= x:
                return False, f"op {step} (D) walks off the left arm"
            p += 1
            errors += 1
    if (p, q) != (r.p_star, r.q_star):
        return False, f"replay ends at ({p}, {q}), result claims ({r.p_star}, {r.q_star})"
    if errors != r.errors:
        return False, f"script has {errors} edits, result claims {r.errors}"
    if r.start != u - r.p_star + 1 or r.end != r.c + r.q_star:
        return False, "extent does not match the cursors"
    size = r.p_star + r.q_star + (1 if r.parity is Parity.ODD else 0)
    if r.size != size:
        return False, f"size {r.size} does not match cursors ({size})"
    return True, ""


def verify_result(
    s: SymbolString, r: PalindromeResult, relation: MatchRelation = IDENTITY
) -> bool:
    """Replay r's script over s and confirm every reported field."""
    ok, _ = _replay(s, r, relation)
    return ok
