"""Expected iteration counts over uniform random strings.

Small alphabets and lengths enumerate all sigma^n strings and return exact
rationals; anything above the enumeration guard is estimated by Monte
Carlo over a shared sample matrix, so every variant sees the same strings.
Expected gain is the ratio form 1 - E[t_test] / E[t_base].
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _scan
from .engine import Variant

ENUM_GUARD = 10_000_000

_METHODS = ("exact", "montecarlo", "auto")


@dataclass(frozen=True)
class ExpectedConfig:
    """One expectation cell: uniform strings of length n over sigma symbols."""

    n: int
    sigma: int
    k: int
    variant: Variant = Variant.ORIGINAL
    method: str = "auto"
    samples: int = 4000
    seed: int = 0
    guard: int = ENUM_GUARD

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"string length {self.n} below 1")
        if self.sigma < 1:
            raise ValueError(f"alphabet size {self.sigma} below 1")
        if self.k < 0:
            raise ValueError(f"error budget {self.k} is negative")
        if self.method not in _METHODS:
            raise ValueError(f"method {self.method!r} not one of {_METHODS}")
        if self.samples < 2:
            raise ValueError(f"need at least 2 samples, got {self.samples}")

    def space(self) -> int:
        return self.sigma ** self.n

    def resolved_method(self) -> str:
        if self.method != "auto":
            return self.method
        return "exact" if self.space() <= self.guard else "montecarlo"


def expected_iterations_exact(cfg: ExpectedConfig) -> Fraction:
    """Exact mean iteration total by enumerating every string."""
    count = cfg.space()
    if count > cfg.guard:
        raise ValueError(
            f"sigma^n = {count} exceeds the enumeration guard {cfg.guard}; "
            "use method='montecarlo' with a sample budget instead"
        )
    from .engine import _VARIANT_CODE

    total = int(_scan.enum_total(cfg.n, cfg.sigma, cfg.k, _VARIANT_CODE[cfg.variant]))
    return Fraction(total, count)


def sample_matrix(cfg: ExpectedConfig) -> np.ndarray:
    """Deterministic (samples, n) matrix of uniform symbols, variant-agnostic."""
    seq = np.random.SeedSequence([cfg.seed, cfg.n, cfg.sigma])
    rng = np.random.Generator(np.random.PCG64(seq))
    return rng.integers(0, cfg.sigma, size=(cfg.samples, cfg.n), dtype=np.int64)


def _mc_stats(totals: np.ndarray) -> Tuple[float, float]:
    mean = float(totals.mean())
    stderr = float(totals.std(ddof=1) / math.sqrt(len(totals)))
    return mean, stderr


def expected_iterations_mc(
    cfg: ExpectedConfig, matrix: Optional[np.ndarray] = None
) -> Tuple[float, float]:
    """Monte Carlo (mean, standard error) of the iteration total."""
    from .engine import _VARIANT_CODE

    if matrix is None:
        matrix = sample_matrix(cfg)
    totals = _scan.batch_totals(matrix, cfg.sigma, cfg.k, _VARIANT_CODE[cfg.variant])
    return _mc_stats(totals)


Number = Union[Fraction, float]


@dataclass(frozen=True)
class ExpectedReport:
    """Expected totals of two variants under one distribution, with the gain."""

    n: int
    sigma: int
    k: int
    base: Variant
    test: Variant
    method: str
    samples: int
    tbar_base: Number
    tbar_test: Number
    stderr_base: Optional[float]
    stderr_test: Optional[float]
    gain: Number


def expected_gain(cfg: ExpectedConfig, base: Variant, test: Variant) -> ExpectedReport:
    """Expected gain of test over base; both sides share method and strings."""
    base, test = Variant(base), Variant(test)
    method = cfg.resolved_method()
    if method == "exact":
        tb = expected_iterations_exact(dataclasses.replace(cfg, variant=base))
        tt = expected_iterations_exact(dataclasses.replace(cfg, variant=test))
        g: Number = Fraction(0) if tb == 0 else (tb - tt) / tb
        return ExpectedReport(
            cfg.n, cfg.sigma, cfg.k, base, test, method, cfg.space(),
            tb, tt, None, None, g,
        )
    matrix = sample_matrix(cfg)
    mb, sb = expected_iterations_mc(dataclasses.replace(cfg, variant=base), matrix)
    mt, st = expected_iterations_mc(dataclasses.replace(cfg, variant=test), matrix)
    g = 0.0 if mb == 0 else (mb - mt) / mb
    return ExpectedReport(
        cfg.n, cfg.sigma, cfg.k, base, test, method, cfg.samples,
        mb, mt, sb, st, g,
    )


DEFAULT_PAIRS: Tuple[Tuple[Variant, Variant], ...] = (
    (Variant.ORIGINAL, Variant.IMPROVE1),
    (Variant.ORIGINAL, Variant.IMPROVE2),
    (Variant.IMPROVE1, Variant.IMPROVE2),
)

DESK_NS = (2, 4, 6, 8, 10)
DESK_SIGMAS = (2, 4, 8)
DESK_KS = (1, 2)


def desk_sweep(
    samples: int = 4000, seed: int = 0
) -> List[Tuple[ExpectedConfig, Variant, Variant]]:
    """Small-scale sweep cells: n x sigma x k grid, all variant pairs."""
    cells = []
    for n in DESK_NS:
        for sigma in DESK_SIGMAS:
            for k in DESK_KS:
                cfg = ExpectedConfig(n, sigma, k, samples=samples, seed=seed)
                for base, test in DEFAULT_PAIRS:
                    cells.append((cfg, base, test))
    return cells


CSV_HEADER = (
    "n,sigma,k,base,test,method,samples,"
    "tbar_base,tbar_test,stderr_base,stderr_test,gain"
)


def emit_csv(reports: Sequence[ExpectedReport]) -> str:
    """CSV text; exact rows leave the stderr columns empty."""
    lines = [CSV_HEADER]
    for r in reports:
        se_b = "" if r.stderr_base is None else f"{r.stderr_base:.6f}"
        se_t = "" if r.stderr_test is None else f"{r.stderr_test:.6f}"
        lines.append(
            f"{r.n},{r.sigma},{r.k},{r.base.value},{r.test.value},"
            f"{r.method},{r.samples},{float(r.tbar_base):.6f},"
            f"{float(r.tbar_test):.6f},{se_b},{se_t},{float(r.gain):.6f}"
        )
    return "\n".join(lines) + "\n"


def trend_report(reports: Sequence[ExpectedReport]) -> List[str]:
    """Non-fatal diagnostics: gain should rise with k, fall with sigma and n."""
    notes: List[str] = []

    def check(label: str, axis, keep, expect_up: bool) -> None:
        groups: Dict[tuple, List[ExpectedReport]] = {}
        for r in reports:
            groups.setdefault(keep(r), []).append(r)
        for key in sorted(groups):
            seq = sorted(groups[key], key=axis)
            for lo, hi in zip(seq, seq[1:]):
                bad = hi.gain < lo.gain if expect_up else hi.gain > lo.gain
                if bad:
                    notes.append(
                        f"{lo.base.value}->{lo.test.value}: gain moves from "
                        f"{float(lo.gain):.6f} to {float(hi.gain):.6f} as "
                        f"{label} goes {axis(lo)} -> {axis(hi)} at {key}"
                    )

    pair = lambda r: (r.base.value, r.test.value)
    check("k", lambda r: r.k, lambda r: (r.n, r.sigma) + pair(r), True)
    check("sigma", lambda r: r.sigma, lambda r: (r.n, r.k) + pair(r), False)
    check("n", lambda r: r.n, lambda r: (r.sigma, r.k) + pair(r), False)
    return notes
