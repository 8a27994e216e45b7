"""Symbol strings, match relations, and benchmark corpus generators.

Strings are sequences of integer symbol codes.  Public APIs use 1-based
positions throughout, matching the S[i..j] slice convention used across
the package.  Randomness comes from numpy's PCG64 seeded through a
SeedSequence, which is splittable and stable across platforms; every
generated corpus is a pure function of (kind, n, seed).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

DNA_SIGMA = 4
TEXT_SIGMA = 94
TEXT_BASE = 33  # '!'..'~', the 94 printable non-space ASCII bytes

CORPUS_KINDS = (
    "dna", "dnap1", "dnap2", "dnap3",
    "txt", "txtp1", "txtp2", "txtp3",
    "cnst", "diff",
)

_PERIOD_FRACTION = {"p1": 0.05, "p2": 0.25, "p3": 0.50}
_DNA_LETTERS = "acgt"


@dataclass(frozen=True)
class SymbolString:
    """Immutable string of integer symbol codes with 1-based access."""

    codes: Tuple[int, ...]

    def __post_init__(self) -> None:
        for v in self.codes:
            if v < 0:
                raise ValueError(f"symbol code {v} is negative")

    @classmethod
    def of(cls, codes: Iterable[int]) -> "SymbolString":
        return cls(tuple(int(v) for v in codes))

    @property
    def n(self) -> int:
        return len(self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    def at(self, i: int) -> int:
        """Symbol at 1-based position i."""
        if not 1 <= i <= len(self.codes):
            raise IndexError(f"position {i} outside 1..{len(self.codes)}")
        return self.codes[i - 1]

    def to_array(self) -> np.ndarray:
        return np.asarray(self.codes, dtype=np.int64)


def reverse(s: SymbolString) -> SymbolString:
    """Reversed copy of s."""
    return SymbolString(tuple(reversed(s.codes)))


@dataclass(frozen=True)
class MatchRelation:
    """Symmetric, single-valued match relation between symbol codes.

    `mapping` is None for plain equality, otherwise an involutive
    code -> code dict; a and b match when mapping[a] == b.
    """

    name: str
    mapping: Optional[Tuple[Tuple[int, int], ...]] = None

    @property
    def is_identity(self) -> bool:
        return self.mapping is None

    def _table(self) -> Dict[int, int]:
        return dict(self.mapping or ())

    def domain(self) -> Optional[frozenset]:
        """Codes the relation is defined on; None means all codes."""
        if self.mapping is None:
            return None
        return frozenset(self._table())

    def image(self, a: int) -> int:
        """Partner code of a (a itself under identity)."""
        if self.mapping is None:
            return a
        table = self._table()
        if a not in table:
            raise ValueError(f"symbol {a} outside relation domain")
        return table[a]

    def matches(self, a: int, b: int) -> bool:
        """True when a and b match under the relation."""
        return self.image(a) == b

    def map_array(self, size: int) -> np.ndarray:
        """Dense lookup table over codes 0..size-1 for kernel use."""
        out = np.arange(size, dtype=np.int64)
        if self.mapping is not None:
            for a, b in self.mapping:
                if a >= size:
                    raise ValueError(f"relation symbol {a} exceeds table size {size}")
                out[a] = b
        return out


IDENTITY = MatchRelation("identity")


def make_complement_relation(pairs: Iterable[Tuple[int, int]]) -> MatchRelation:
    """Build an involutive complement relation from symbol pairs.

    Every symbol must appear exactly once across all pairs; (a, a) pairs
    declare self-complementary symbols.
    """
    table: Dict[int, int] = {}
    for a, b in pairs:
        a, b = int(a), int(b)
        for sym in {a, b}:
            if sym in table:
                raise ValueError(f"symbol {sym} listed more than once")
        table[a] = b
        table[b] = a
    for a, b in table.items():
        if table.get(b) != a:
            raise ValueError(f"mapping is not involutive at symbol {a}")
    items = tuple(sorted(table.items()))
    return MatchRelation("complement", items)


DNA_COMPLEMENT = make_complement_relation([(0, 3), (1, 2)])  # a-t, c-g


@dataclass(frozen=True)
class CorpusSpec:
    """Deterministic corpus request: (kind, n, seed) fixes the string."""

    kind: str
    n: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in CORPUS_KINDS:
            raise ValueError(f"unknown corpus kind {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"corpus length {self.n} must be >= 1")

    @property
    def sigma(self) -> int:
        """Alphabet size of the generated string."""
        if self.kind.startswith("dna"):
            return DNA_SIGMA
        if self.kind.startswith("txt"):
            return TEXT_SIGMA
        if self.kind == "cnst":
            return 1
        return self.n  # diff

    @property
    def period(self) -> Optional[int]:
        """Tile period for the periodic kinds, None otherwise."""
        suffix = self.kind[3:]
        if self.kind[:3] in ("dna", "txt") and suffix in _PERIOD_FRACTION:
            return int(_PERIOD_FRACTION[suffix] * self.n)
        return None


def _rng(spec: CorpusSpec) -> np.random.Generator:
    # Child stream keyed on (seed, kind index, n); documented in the README.
    entropy = [spec.seed, CORPUS_KINDS.index(spec.kind), spec.n]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def gen_corpus(spec: CorpusSpec) -> SymbolString:
    """Generate the corpus string for spec."""
    n = spec.n
    if spec.kind == "cnst":
        return SymbolString.of([0] * n)
    if spec.kind == "diff":
        return SymbolString.of(range(n))
    period = spec.period
    rng = _rng(spec)
    if period is None:
        return SymbolString.of(rng.integers(0, spec.sigma, size=n))
    if period < 1:
        raise ValueError(
            f"corpus {spec.kind} at n={n} has period {period}; "
            f"lengths below {int(1 / _PERIOD_FRACTION[spec.kind[3:]])} are infeasible"
        )
    tile = rng.integers(0, spec.sigma, size=period)
    reps = -(-n // period)
    return SymbolString.of(np.tile(tile, reps)[:n])


def encode_text(data, mode: str) -> SymbolString:
    """Encode bytes or str into symbol codes.

    mode 'dna' folds case and maps acgt -> 0..3; mode 'ascii' maps the
    printable bytes 33..126 to 0..93.  Rejects anything else, reporting
    the 1-based byte offset.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    if mode == "dna":
        lut = {ord(ch): i for i, ch in enumerate(_DNA_LETTERS)}
        lut.update({ord(ch.upper()): i for i, ch in enumerate(_DNA_LETTERS)})
        out = []
        for off, b in enumerate(data, start=1):
            if b not in lut:
                raise ValueError(f"symbol {chr(b)!r} at offset {off} is not a DNA base")
            out.append(lut[b])
        return SymbolString.of(out)
    if mode == "ascii":
        out = []
        for off, b in enumerate(data, start=1):
            if not TEXT_BASE <= b <= 126:
                raise ValueError(
                    f"byte {b} at offset {off} outside printable range 33..126"
                )
            out.append(b - TEXT_BASE)
        return SymbolString.of(out)
    raise ValueError(f"unknown encode mode {mode!r}")
