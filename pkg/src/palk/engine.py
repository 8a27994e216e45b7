"""Single-center k-differences scanning and its supporting procedures.

The scan walks error levels e = 0..k; for each level it advances the
farthest-reaching path endpoint on every live diagonal d = j - i of the
grid between X = S[1..u]^R and Y = S[c+1..n], extending matches through
the LCE oracle.  Three variants share one kernel: the plain scan, a
doubly-linked-list pruner that retires a diagonal once its endpoint hits
row x or column y, and a strip pruner that also discards everything
outside the contiguous band of surviving diagonals.  All three return
identical endpoints; only the iteration counts differ.

Also here: the free-start approximate pattern matcher, the edit-script
traceback, and the dense DP routines used as test oracles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import _scan
from .lce import LceOracle, PairOracle
from .symbols import IDENTITY, MatchRelation, SymbolString


class Parity(str, Enum):
    """Center parity; fixes the left arm length u."""

    EVEN = "even"
    ODD = "odd"


class Variant(str, Enum):
    """Diagonal-pruning scheme used by the scan."""

    ORIGINAL = "original"
    IMPROVE1 = "imp1"
    IMPROVE2 = "imp2"


_VARIANT_CODE = {
    Variant.ORIGINAL: _scan.VARIANT_ORIGINAL,
    Variant.IMPROVE1: _scan.VARIANT_IMPROVE1,
    Variant.IMPROVE2: _scan.VARIANT_IMPROVE2,
}


class EditOp(str, Enum):
    """One edit-script step transforming the left arm into the right arm."""

    MATCH = "M"
    SUB = "S"
    INS = "I"
    DEL = "D"


EditScript = Tuple[EditOp, ...]


@dataclass(frozen=True)
class CenterConfig:
    """One scan position: 1-based center c, parity, arm lengths x and y."""

    c: int
    parity: Parity
    x: int
    y: int

    @classmethod
    def of(cls, n: int, c: int, parity) -> "CenterConfig":
        parity = Parity(parity)
        if not 1 <= c <= n:
            raise IndexError(f"center {c} outside 1..{n}")
        u = c if parity is Parity.EVEN else c - 1
        return cls(c, parity, u, n - c)


@dataclass(frozen=True)
class IterationStats:
    """Step-1 execution plus one count per processed (e, d) pair."""

    iterations: int
    max_lifetime: int


@dataclass(frozen=True)
class _Trace:
    off: int
    row: np.ndarray
    op: np.ndarray
    i0: np.ndarray


@dataclass(frozen=True)
class CenterOutcome:
    """Best grid endpoint of one center scan, with instrumentation."""

    config: CenterConfig
    k: int
    variant: Variant
    i_star: int
    j_star: int
    e_best: int
    corner: bool
    stats: IterationStats
    trace: Optional[_Trace] = field(default=None, repr=False)


def k_differences_scan(
    oracle: LceOracle,
    cfg: CenterConfig,
    k: int,
    variant: Variant = Variant.ORIGINAL,
    want_script: bool = False,
) -> CenterOutcome:
    """Farthest-reaching diagonal scan from one center, up to k errors."""
    if k < 0:
        raise ValueError(f"error budget {k} is negative")
    n = oracle.n
    if cfg.c > n or cfg.y != n - cfg.c:
        raise ValueError(f"{cfg} does not fit a string of length {n}")
    variant = Variant(variant)
    w = min(k, cfg.x) + min(k, cfg.y) + 3
    work = [np.empty(w, dtype=np.int64) for _ in range(6)]
    if want_script:
        hist_row = np.full((k + 1, w), _scan.ABSENT, dtype=np.int64)
        hist_op = np.zeros((k + 1, w), dtype=np.int64)
        hist_i0 = np.zeros((k + 1, w), dtype=np.int64)
    else:
        hist_row = hist_op = hist_i0 = np.empty((1, 1), dtype=np.int64)
    idx = oracle.index
    p, q, _, e_best, iters, max_life, corner = _scan.scan_center(
        idx.text, idx.rank, idx.table, idx.log,
        n, cfg.c, cfg.x, k, _VARIANT_CODE[variant], want_script, True,
        hist_row, hist_op, hist_i0, *work,
    )
    trace = _Trace(min(k, cfg.x) + 1, hist_row, hist_op, hist_i0) if want_script else None
    return CenterOutcome(
        cfg, k, variant, int(p), int(q), int(e_best), bool(corner),
        IterationStats(int(iters), int(max_life)), trace,
    )


def string_iterations(
    oracle: LceOracle,
    k: int,
    variant: Variant,
    include_trivial: bool = False,
) -> int:
    """Iteration total over all centers of both parities."""
    if k < 0:
        raise ValueError(f"error budget {k} is negative")
    w = 2 * min(k, oracle.n) + 3
    work = [np.empty(w, dtype=np.int64) for _ in range(6)]
    idx = oracle.index
    return int(_scan.string_total(
        idx.text, idx.rank, idx.table, idx.log,
        oracle.n, k, _VARIANT_CODE[Variant(variant)], include_trivial, *work,
    ))


_OP_OF_CODE = {
    _scan.OP_INS: EditOp.INS,
    _scan.OP_SUB: EditOp.SUB,
    _scan.OP_DEL: EditOp.DEL,
}


def reconstruct_script(outcome: CenterOutcome) -> EditScript:
    """Edit script reaching the outcome's endpoint, replayable from (0, 0)."""
    tr = outcome.trace
    if tr is None:
        raise ValueError("scan was run without want_script")
    slot = tr.off + (outcome.j_star - outcome.i_star)
    e = outcome.e_best
    ops: List[EditOp] = []
    while True:
        row = int(tr.row[e, slot])
        op = int(tr.op[e, slot])
        i0 = int(tr.i0[e, slot])
        ops.extend([EditOp.MATCH] * (row - i0))
        if op == _scan.OP_NONE:
            break
        ops.append(_OP_OF_CODE[op])
        if op == _scan.OP_INS:
            slot, src_row = slot - 1, i0
        elif op == _scan.OP_SUB:
            slot, src_row = slot, i0 - 1
        else:
            slot, src_row = slot + 1, i0 - 1
        e -= 1
        while tr.row[e, slot] == _scan.ABSENT:
            e -= 1
        assert int(tr.row[e, slot]) == src_row, "trace does not chain"
    return tuple(reversed(ops))


def render_script(script: EditScript) -> str:
    """Run-length rendering of a script, e.g. 2M1S1I; empty script -> ''."""
    parts = []
    run = 0
    prev: Optional[EditOp] = None
    for op in script:
        if op is prev:
            run += 1
        else:
            if prev is not None:
                parts.append(f"{run}{prev.value}")
            prev, run = op, 1
    if prev is not None:
        parts.append(f"{run}{prev.value}")
    return "".join(parts)


def approx_pattern_match(oracle: PairOracle, k: int) -> List[Tuple[int, int]]:
    """All (end column j, minimum errors) where the pattern matches in Y.

    Free-start variant of the scan: step 1 seeds every diagonal 0..y with
    its initial extension; step 2 grows e = 1..k over diagonals
    -min(e, x)..y; an occurrence is recorded the first time a diagonal's
    farthest row reaches x.
    """
    x, y = oracle.x, oracle.y
    if not 0 <= k <= y:
        raise ValueError(f"error budget {k} outside 0..{y}")
    found: Dict[int, int] = {}
    rows: Dict[int, int] = {}
    for d in range(0, y + 1):
        r = oracle.lce_xy(0, d)
        rows[d] = r
        if r == x:
            found[x + d] = 0
    for e in range(1, k + 1):
        prev = dict(rows)
        for d in range(-min(e, x), y + 1):
            rl = prev.get(d - 1)
            rm = prev.get(d)
            rr = prev.get(d + 1)
            cand = -1
            if rl is not None:
                cand = rl
            if rm is not None:
                cand = max(cand, rm + 1)
            if rr is not None:
                cand = max(cand, rr + 1)
            if cand < 0:
                continue
            # candidates past an edge slide back onto it (free end start)
            cand = min(cand, x, y - d)
            r = cand + oracle.lce_xy(cand, cand + d)
            if rm is None or r > rm:
                rows[d] = r
                if r == x and x + d not in found:
                    found[x + d] = e
    return sorted(found.items())


def dp_oracle(
    X: SymbolString, Y: SymbolString, relation: MatchRelation = IDENTITY
) -> np.ndarray:
    """Dense (x+1) x (y+1) unit-cost edit-distance table, relation matches free."""
    xs = X.to_array()
    ys = Y.to_array()
    size = int(max(xs.max(initial=0), ys.max(initial=0))) + 1
    if relation.mapping is not None:
        size = max(size, max(a for a, _ in relation.mapping) + 1)
    return _scan.dp_fill(xs, ys, relation.map_array(size))


def oracle_maximal(
    X: SymbolString, Y: SymbolString, k: int, relation: MatchRelation = IDENTITY
) -> Tuple[int, int]:
    """Max p+q with edit distance <= k, then the fewest errors among ties."""
    if k < 0:
        raise ValueError(f"error budget {k} is negative")
    D = dp_oracle(X, Y, relation)
    ok = D <= k
    sums = np.add.outer(np.arange(D.shape[0]), np.arange(D.shape[1]))
    best = int(sums[ok].max())
    return best, int(D[ok & (sums == best)].min())
