"""Constant-time longest-common-extension oracle over a two-segment text.

For a string S of length n and a match relation, the oracle indexes

    T = rho(S^R) . #1 . S . #2

where rho applies the relation's symbol map to every code of the reversed
string (the identity relation leaves codes unchanged) and #1, #2 are fresh
sentinel codes larger than every symbol code.  Plain equality inside T then
encodes a relation-match between a left-arm view and a right-arm view, and
the sentinels stop every extension at its segment boundary.

The index is a suffix array built by rank doubling (numpy's stable integer
sorts are radix based, so construction is O(n log n)), a Kasai LCP array,
and a sparse table for O(1) range-minimum queries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from .symbols import IDENTITY, MatchRelation, SymbolString


def _suffix_array(codes: np.ndarray) -> np.ndarray:
    n = codes.shape[0]
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    order = np.argsort(codes, kind="stable")
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.concatenate(
        ([0], np.cumsum(codes[order][1:] != codes[order][:-1]))
    )
    h = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - h] = rank[h:]
        sa = np.lexsort((second, rank))
        changed = (rank[sa][1:] != rank[sa][:-1]) | (second[sa][1:] != second[sa][:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.concatenate(([0], np.cumsum(changed)))
        rank = new_rank
        if rank[sa[-1]] == n - 1:
            return sa.astype(np.int64)
        h *= 2


def _lcp_kasai(codes: np.ndarray, sa: np.ndarray) -> np.ndarray:
    n = codes.shape[0]
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.arange(n)
    lcp = np.zeros(max(n - 1, 1), dtype=np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == n - 1:
            h = 0
            continue
        j = sa[r + 1]
        while i + h < n and j + h < n and codes[i + h] == codes[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def _log_table(m: int) -> np.ndarray:
    out = np.zeros(m + 1, dtype=np.int64)
    for i in range(2, m + 1):
        out[i] = out[i // 2] + 1
    return out


def _sparse_table(values: np.ndarray) -> np.ndarray:
    m = values.shape[0]
    levels = int(m).bit_length()
    table = np.empty((levels, m), dtype=np.int64)
    table[0] = values
    span = 1
    for lv in range(1, levels):
        reach = m - 2 * span
        if reach >= 0:
            table[lv, : reach + 1] = np.minimum(
                table[lv - 1, : reach + 1], table[lv - 1, span : reach + 1 + span]
            )
        span *= 2
    return table


@dataclass(frozen=True)
class _IndexedText:
    """Suffix-indexed integer text with O(1) longest-common-prefix queries."""

    text: np.ndarray
    rank: np.ndarray
    table: np.ndarray
    log: np.ndarray

    @classmethod
    def build(cls, codes: np.ndarray) -> "_IndexedText":
        codes = np.ascontiguousarray(codes, dtype=np.int64)
        sa = _suffix_array(codes)
        lcp = _lcp_kasai(codes, sa)
        rank = np.empty(codes.shape[0], dtype=np.int64)
        rank[sa] = np.arange(codes.shape[0])
        return cls(codes, rank, _sparse_table(lcp), _log_table(codes.shape[0]))

    def lcp(self, a: int, b: int) -> int:
        """Common-prefix length of the suffixes at 0-based positions a, b."""
        m = self.text.shape[0]
        if a == b:
            return m - a
        ra, rb = int(self.rank[a]), int(self.rank[b])
        if ra > rb:
            ra, rb = rb, ra
        lv = int(self.log[rb - ra])
        return int(min(self.table[lv, ra], self.table[lv, rb - (1 << lv)]))


@dataclass(frozen=True)
class LceOracle:
    """Longest-common-extension oracle for one string and relation."""

    s: SymbolString
    relation: MatchRelation
    index: _IndexedText = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.s)

    @property
    def text_length(self) -> int:
        return 2 * len(self.s) + 2


def build_lce(s: SymbolString, relation: MatchRelation = IDENTITY) -> LceOracle:
    """Index rho(S^R) . #1 . S . #2 for constant-time extensions."""
    n = len(s)
    if n < 1:
        raise ValueError("cannot index an empty string")
    domain = relation.domain()
    if domain is not None:
        for off, v in enumerate(s.codes, start=1):
            if v not in domain:
                raise ValueError(
                    f"symbol {v} at position {off} outside relation domain"
                )
    codes = s.to_array()
    left = np.array([relation.image(v) for v in reversed(s.codes)], dtype=np.int64)
    hi = int(max(codes.max(), left.max() if n else 0))
    text = np.concatenate(
        (left, [hi + 1], codes, [hi + 2])
    ).astype(np.int64)
    return LceOracle(s, relation, _IndexedText.build(text))


def lce_query(oracle: LceOracle, a: int, b: int) -> int:
    """Common-extension length of the suffixes at 1-based text positions a, b."""
    m = oracle.text_length
    if not (1 <= a <= m and 1 <= b <= m):
        raise IndexError(f"positions ({a}, {b}) outside 1..{m}")
    return oracle.index.lcp(a - 1, b - 1)


def _arm_length(n: int, c: int, parity: str) -> int:
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if not 1 <= c <= n:
        raise IndexError(f"center {c} outside 1..{n}")
    return c if parity == "even" else c - 1


def lce_views(oracle: LceOracle, c: int, parity: str, p: int, q: int) -> int:
    """Extension length between the arm views at cursor offsets (p, q).

    The left view is S[1..u]^R read from offset p, the right view is
    S[c+1..n] read from offset q, with u = c for even parity and c - 1
    for odd.  Sentinels cap the result at min(u - p, n - c - q).
    """
    n = oracle.n
    u = _arm_length(n, c, parity)
    if not 0 <= p <= u:
        raise IndexError(f"left cursor {p} outside 0..{u}")
    if not 0 <= q <= n - c:
        raise IndexError(f"right cursor {q} outside 0..{n - c}")
    return oracle.index.lcp(n - u + p, n + c + q + 1)


@dataclass(frozen=True)
class PairOracle:
    """Extension oracle between a pattern X and a text Y (rho applied to X)."""

    x: int
    y: int
    relation: MatchRelation
    index: _IndexedText = field(repr=False)

    def lce_xy(self, i: int, j: int) -> int:
        """Extension of X from 0-based offset i against Y from offset j."""
        if not 0 <= i <= self.x:
            raise IndexError(f"pattern offset {i} outside 0..{self.x}")
        if not 0 <= j <= self.y:
            raise IndexError(f"text offset {j} outside 0..{self.y}")
        return self.index.lcp(i, self.x + 1 + j)


def build_pair_oracle(
    x_codes: Sequence[int], y_codes: Sequence[int], relation: MatchRelation = IDENTITY
) -> PairOracle:
    """Index rho(X) . #1 . Y . #2 for approximate pattern matching."""
    xs = tuple(int(v) for v in x_codes)
    ys = tuple(int(v) for v in y_codes)
    mapped = tuple(relation.image(v) for v in xs)
    hi = max(mapped + ys, default=0)
    text = np.array(mapped + (hi + 1,) + ys + (hi + 2,), dtype=np.int64)
    return PairOracle(len(xs), len(ys), relation, _IndexedText.build(text))
