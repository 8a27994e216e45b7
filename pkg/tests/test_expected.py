"""Expected iteration counts: exact enumeration, Monte Carlo, gains."""
from fractions import Fraction

import numpy as np
import pytest

from palk.engine import Variant, string_iterations
from palk.expected import (
    CSV_HEADER,
    DEFAULT_PAIRS,
    ENUM_GUARD,
    ExpectedConfig,
    desk_sweep,
    emit_csv,
    expected_gain,
    expected_iterations_exact,
    expected_iterations_mc,
    sample_matrix,
    trend_report,
)
from palk.lce import build_lce
from palk.symbols import SymbolString


class TestConfig:
    @pytest.mark.parametrize("kwargs", [
        dict(n=0, sigma=2, k=1),
        dict(n=2, sigma=0, k=1),
        dict(n=2, sigma=2, k=-1),
        dict(n=2, sigma=2, k=1, method="guess"),
        dict(n=2, sigma=2, k=1, samples=1),
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            ExpectedConfig(**kwargs)

    def test_auto_method_resolution(self):
        assert ExpectedConfig(4, 2, 1).resolved_method() == "exact"
        assert ExpectedConfig(30, 4, 1).resolved_method() == "montecarlo"
        assert ExpectedConfig(30, 4, 1, method="exact").resolved_method() == "exact"


class TestExact:
    def test_single_string_universe(self):
        assert expected_iterations_exact(ExpectedConfig(2, 1, 1)) == Fraction(1)

    def test_length_one_has_no_centers(self):
        assert expected_iterations_exact(ExpectedConfig(1, 3, 2)) == 0

    def test_matches_manual_enumeration(self):
        n, sigma, k = 4, 2, 1
        for variant in Variant:
            total = 0
            for word in range(sigma ** n):
                codes = [(word // sigma ** i) % sigma for i in range(n)]
                oracle = build_lce(SymbolString.of(codes))
                total += string_iterations(oracle, k, variant)
            got = expected_iterations_exact(ExpectedConfig(n, sigma, k, variant=variant))
            assert got == Fraction(total, sigma ** n)

    def test_guard_rejects_large_spaces(self):
        cfg = ExpectedConfig(30, 4, 1, method="exact")
        with pytest.raises(ValueError, match="guard"):
            expected_iterations_exact(cfg)
        assert ENUM_GUARD == 10 ** 7


class TestMonteCarlo:
    def test_sample_matrix_shape_and_determinism(self):
        cfg = ExpectedConfig(6, 3, 1, samples=40, seed=5)
        m = sample_matrix(cfg)
        assert m.shape == (40, 6)
        assert m.max() < 3 and m.min() >= 0
        assert (m == sample_matrix(cfg)).all()
        # the matrix ignores the variant, so both sides share strings
        other = sample_matrix(ExpectedConfig(6, 3, 1, variant=Variant.IMPROVE2,
                                             samples=40, seed=5))
        assert (m == other).all()

    def test_mean_matches_direct_average(self):
        cfg = ExpectedConfig(5, 2, 1, samples=30, seed=2)
        mean, stderr = expected_iterations_mc(cfg)
        m = sample_matrix(cfg)
        totals = [
            string_iterations(build_lce(SymbolString.of([int(v) for v in row])),
                              cfg.k, cfg.variant)
            for row in m
        ]
        assert mean == pytest.approx(np.mean(totals))
        assert stderr == pytest.approx(np.std(totals, ddof=1) / np.sqrt(30))

    def test_degenerate_alphabet_has_zero_spread(self):
        mean, stderr = expected_iterations_mc(ExpectedConfig(4, 1, 2, samples=10))
        assert stderr == 0.0


class TestExpectedGain:
    def test_exact_cell(self):
        cfg = ExpectedConfig(5, 2, 2, method="exact")
        rep = expected_gain(cfg, Variant.ORIGINAL, Variant.IMPROVE2)
        assert rep.method == "exact"
        assert rep.samples == 32
        assert rep.stderr_base is None and rep.stderr_test is None
        assert isinstance(rep.gain, Fraction)
        assert rep.gain == (rep.tbar_base - rep.tbar_test) / rep.tbar_base

    def test_length_one_defines_zero_gain(self):
        rep = expected_gain(ExpectedConfig(1, 2, 1), Variant.ORIGINAL,
                            Variant.IMPROVE1)
        assert rep.tbar_base == 0 and rep.gain == 0

    def test_mc_cell_shares_samples(self):
        cfg = ExpectedConfig(6, 2, 1, method="montecarlo", samples=50, seed=3)
        rep = expected_gain(cfg, Variant.ORIGINAL, Variant.IMPROVE1)
        assert rep.method == "montecarlo" and rep.samples == 50
        base, _ = expected_iterations_mc(
            ExpectedConfig(6, 2, 1, variant=Variant.ORIGINAL,
                           method="montecarlo", samples=50, seed=3))
        assert rep.tbar_base == pytest.approx(base)
        assert rep.tbar_test <= rep.tbar_base
        again = expected_gain(cfg, Variant.ORIGINAL, Variant.IMPROVE1)
        assert again == rep

    def test_desk_sweep_covers_grid(self):
        cells = desk_sweep()
        assert len(cells) == 5 * 3 * 2 * len(DEFAULT_PAIRS)
        ns = {cfg.n for cfg, _, _ in cells}
        assert ns == {2, 4, 6, 8, 10}


class TestEmission:
    def test_csv_shape(self):
        reports = [
            expected_gain(ExpectedConfig(4, 2, 1), b, t) for b, t in DEFAULT_PAIRS
        ] + [
            expected_gain(ExpectedConfig(4, 2, 1, method="montecarlo",
                                         samples=20), b, t)
            for b, t in DEFAULT_PAIRS
        ]
        lines = emit_csv(reports).splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 7
        exact_fields = lines[1].split(",")
        assert exact_fields[5] == "exact"
        assert exact_fields[9] == "" and exact_fields[10] == ""
        mc_fields = lines[4].split(",")
        assert mc_fields[5] == "montecarlo"
        assert mc_fields[9] != "" and mc_fields[10] != ""

    def test_trend_report_flags_each_axis(self):
        def rep(n, sigma, k, g):
            return type(
                "R", (), dict(n=n, sigma=sigma, k=k, base=Variant.ORIGINAL,
                              test=Variant.IMPROVE1, gain=g))()

        drop_in_k = [rep(4, 2, 1, 0.5), rep(4, 2, 2, 0.4)]
        assert len(trend_report(drop_in_k)) == 1
        rise_in_sigma = [rep(4, 2, 1, 0.4), rep(4, 4, 1, 0.5)]
        assert len(trend_report(rise_in_sigma)) == 1
        rise_in_n = [rep(4, 2, 1, 0.4), rep(6, 2, 1, 0.5)]
        assert len(trend_report(rise_in_n)) == 1
        clean = [rep(4, 2, 1, 0.4), rep(4, 2, 2, 0.5), rep(6, 2, 1, 0.3)]
        assert trend_report(clean) == []
