"""Single-center scan: frozen cases, variant invariants, oracles, scripts."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from palk.engine import (
    CenterConfig,
    EditOp,
    Parity,
    Variant,
    approx_pattern_match,
    dp_oracle,
    k_differences_scan,
    oracle_maximal,
    reconstruct_script,
    render_script,
    string_iterations,
)
from palk.lce import build_lce, build_pair_oracle
from palk.symbols import IDENTITY, CorpusSpec, SymbolString, gen_corpus


def enc(text):
    return SymbolString.of([ord(ch) - ord("a") for ch in text])


BBAABAC = enc("bbaabac")
ALL_VARIANTS = tuple(Variant)


def scan(s, c, parity, k, variant=Variant.ORIGINAL, want_script=False):
    oracle = build_lce(s)
    cfg = CenterConfig.of(len(s), c, parity)
    return k_differences_scan(oracle, cfg, k, variant, want_script)


class TestFrozenCases:
    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    @pytest.mark.parametrize("k,want", [
        (0, (2, 2, 0, False)),
        (1, (3, 3, 1, False)),
        (2, (3, 4, 2, True)),  # whole string consumed, corner abort
    ])
    def test_even_center_3(self, k, want, variant):
        out = scan(BBAABAC, 3, Parity.EVEN, k, variant)
        assert (out.i_star, out.j_star, out.e_best, out.corner) == want

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    @pytest.mark.parametrize("k,want", [
        (0, (0, 0, 0)),
        (2, (3, 2, 2)),  # ties broken toward the smaller diagonal
        (3, (3, 3, 3)),
    ])
    def test_odd_center_4(self, k, want, variant):
        out = scan(BBAABAC, 4, Parity.ODD, k, variant)
        assert (out.i_star, out.j_star, out.e_best) == want

    def test_exact_even_profile(self):
        sizes = [scan(BBAABAC, c, Parity.EVEN, 0).i_star * 2 for c in range(1, 7)]
        assert sizes == [2, 0, 4, 0, 0, 0]

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            scan(BBAABAC, 3, Parity.EVEN, -1)

    def test_center_out_of_range(self):
        with pytest.raises(IndexError):
            CenterConfig.of(7, 8, Parity.EVEN)
        with pytest.raises(IndexError):
            CenterConfig.of(7, 0, Parity.ODD)


def random_string(rng, n_max=14, sigma_max=4):
    n = int(rng.integers(2, n_max + 1))
    sigma = int(rng.integers(1, sigma_max + 1))
    return SymbolString.of([int(v) for v in rng.integers(0, sigma, n)])


class TestVariantInvariants:
    def test_endpoints_agree_and_counts_order(self):
        rng = np.random.default_rng(21)
        for _ in range(60):
            s = random_string(rng)
            n = len(s)
            k = int(rng.integers(0, 6))
            oracle = build_lce(s)
            totals = {}
            for variant in ALL_VARIANTS:
                got = []
                for c in range(1, n + 1):
                    for parity in (Parity.EVEN, Parity.ODD):
                        out = k_differences_scan(
                            oracle, CenterConfig.of(n, c, parity), k, variant)
                        got.append((out.i_star, out.j_star, out.e_best))
                totals[variant] = string_iterations(oracle, k, variant,
                                                    include_trivial=True)
                if variant is Variant.ORIGINAL:
                    baseline = got
                else:
                    assert got == baseline
            assert totals[Variant.IMPROVE2] <= totals[Variant.IMPROVE1]
            assert totals[Variant.IMPROVE1] <= totals[Variant.ORIGINAL]

    def test_iteration_bound(self):
        rng = np.random.default_rng(22)
        for _ in range(40):
            s = random_string(rng)
            n = len(s)
            k = int(rng.integers(0, 6))
            oracle = build_lce(s)
            for c in range(1, n + 1):
                for parity in (Parity.EVEN, Parity.ODD):
                    out = k_differences_scan(
                        oracle, CenterConfig.of(n, c, parity), k, Variant.ORIGINAL)
                    assert out.stats.iterations <= (k + 1) ** 2

    def test_diff_reaches_the_bound(self):
        s = gen_corpus(CorpusSpec("diff", 30, 0))
        oracle = build_lce(s)
        for k in (1, 2, 5, 8):
            for c in range(1, 31):
                for parity in (Parity.EVEN, Parity.ODD):
                    cfg = CenterConfig.of(30, c, parity)
                    if cfg.x < k or cfg.y < k or (cfg.x == k and cfg.y == k):
                        continue
                    out = k_differences_scan(oracle, cfg, k, Variant.ORIGINAL)
                    assert out.stats.iterations == (k + 1) ** 2

    def test_string_total_sums_center_scans(self):
        s = enc("abacabadab")
        oracle = build_lce(s)
        n = len(s)
        for k in (0, 2, 4):
            for variant in ALL_VARIANTS:
                by_hand = 0
                for c in range(1, n + 1):
                    for parity in (Parity.EVEN, Parity.ODD):
                        out = k_differences_scan(
                            oracle, CenterConfig.of(n, c, parity), k, variant)
                        by_hand += out.stats.iterations
                assert string_iterations(oracle, k, variant,
                                         include_trivial=True) == by_hand

    def test_walk_twin_matches_indexed_totals(self):
        # The direct-comparison twin used by the enumeration drivers must
        # count exactly like the indexed kernel, variant by variant.
        from palk import _scan

        rng = np.random.default_rng(11)
        for _ in range(40):
            n = int(rng.integers(1, 13))
            sigma = int(rng.integers(1, 5))
            codes = rng.integers(0, sigma, size=n)
            s = SymbolString.of(codes.tolist())
            oracle = build_lce(s)
            text = np.empty(2 * n + 2, dtype=np.int64)
            _scan._fill_text(text, codes.astype(np.int64), n, sigma)
            k = min(int(rng.integers(0, n + 2)), n)
            work = [np.empty(2 * k + 3, dtype=np.int64) for _ in range(5)]
            codes_of = {"original": _scan.VARIANT_ORIGINAL,
                        "imp1": _scan.VARIANT_IMPROVE1,
                        "imp2": _scan.VARIANT_IMPROVE2}
            for variant in ALL_VARIANTS:
                got = _scan.walk_string_total(
                    text, n, k, codes_of[variant.value], False, *work)
                want = string_iterations(oracle, k, variant)
                assert got == want, (n, sigma, k, variant)


def replay(script, left, right):
    """Apply a script; returns (p, q, edits) or None when it walks off."""
    p = q = edits = 0
    for op in script:
        if op is EditOp.MATCH:
            if p >= len(left) or q >= len(right) or left[p] != right[q]:
                return None
            p, q = p + 1, q + 1
        elif op is EditOp.SUB:
            if p >= len(left) or q >= len(right):
                return None
            p, q, edits = p + 1, q + 1, edits + 1
        elif op is EditOp.INS:
            if q >= len(right):
                return None
            q, edits = q + 1, edits + 1
        else:
            if p >= len(left):
                return None
            p, edits = p + 1, edits + 1
    return p, q, edits


class TestScripts:
    def test_script_replays_to_endpoint(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            s = random_string(rng)
            n = len(s)
            k = int(rng.integers(0, 5))
            oracle = build_lce(s)
            for c in range(1, n + 1):
                for parity in (Parity.EVEN, Parity.ODD):
                    for variant in ALL_VARIANTS:
                        out = k_differences_scan(
                            oracle, CenterConfig.of(n, c, parity), k, variant,
                            want_script=True)
                        script = reconstruct_script(out)
                        u = c if parity is Parity.EVEN else c - 1
                        left = tuple(reversed(s.codes[:u]))
                        right = s.codes[c:]
                        assert replay(script, left, right) == \
                            (out.i_star, out.j_star, out.e_best)

    def test_script_requires_trace(self):
        out = scan(BBAABAC, 3, Parity.EVEN, 1)
        with pytest.raises(ValueError, match="want_script"):
            reconstruct_script(out)

    @pytest.mark.parametrize("ops,text", [
        ((), ""),
        ((EditOp.MATCH, EditOp.MATCH, EditOp.SUB, EditOp.INS), "2M1S1I"),
        ((EditOp.DEL,), "1D"),
        ((EditOp.MATCH, EditOp.SUB, EditOp.SUB, EditOp.MATCH), "1M2S1M"),
    ])
    def test_render_script(self, ops, text):
        assert render_script(ops) == text


class TestPatternMatch:
    def test_frozen_examples(self):
        po = build_pair_oracle(enc("bb").codes, enc("aabac").codes, IDENTITY)
        assert approx_pattern_match(po, 1) == [(3, 1), (4, 1)]
        # a 3-path also ends at column 4; per-j minimum keeps (4, 1)
        assert dict(approx_pattern_match(po, 3))[4] == 1
        po = build_pair_oracle(enc("b").codes, enc("bbb").codes, IDENTITY)
        assert approx_pattern_match(po, 0) == [(1, 0), (2, 0), (3, 0)]

    def test_budget_bounds(self):
        po = build_pair_oracle((0,), (0, 1), IDENTITY)
        with pytest.raises(ValueError):
            approx_pattern_match(po, 3)
        with pytest.raises(ValueError):
            approx_pattern_match(po, -1)

    def test_matches_free_start_dp(self):
        rng = np.random.default_rng(24)
        for _ in range(120):
            x = int(rng.integers(1, 7))
            y = int(rng.integers(1, 10))
            sigma = int(rng.integers(1, 4))
            xs = tuple(int(v) for v in rng.integers(0, sigma, x))
            ys = tuple(int(v) for v in rng.integers(0, sigma, y))
            k = int(rng.integers(0, y + 1))
            # free-start edit distance: D[0][j] = 0 for every j
            D = np.zeros((x + 1, y + 1), dtype=int)
            D[:, 0] = np.arange(x + 1)
            for i in range(1, x + 1):
                for j in range(1, y + 1):
                    cost = 0 if xs[i - 1] == ys[j - 1] else 1
                    D[i][j] = min(D[i - 1][j] + 1, D[i][j - 1] + 1,
                                  D[i - 1][j - 1] + cost)
            want = [(j, int(D[x][j])) for j in range(y + 1) if D[x][j] <= k]
            po = build_pair_oracle(xs, ys, IDENTITY)
            assert approx_pattern_match(po, k) == want


class TestDpOracles:
    def test_dp_frozen_values(self):
        assert dp_oracle(enc("bb"), enc("aaba"))[2][4] == 3
        assert dp_oracle(enc("abb"), enc("abac"))[3][4] == 2

    def test_dp_against_reference(self):
        rng = np.random.default_rng(25)
        for _ in range(40):
            xs = enc("".join("abc"[int(v)] for v in rng.integers(0, 3, rng.integers(0, 7))))
            ys = enc("".join("abc"[int(v)] for v in rng.integers(0, 3, rng.integers(0, 7))))
            D = dp_oracle(xs, ys)
            x, y = len(xs), len(ys)
            R = np.zeros((x + 1, y + 1), dtype=int)
            R[0, :] = np.arange(y + 1)
            R[:, 0] = np.arange(x + 1)
            for i in range(1, x + 1):
                for j in range(1, y + 1):
                    cost = 0 if xs.codes[i - 1] == ys.codes[j - 1] else 1
                    R[i][j] = min(R[i - 1][j] + 1, R[i][j - 1] + 1,
                                  R[i - 1][j - 1] + cost)
            assert (D == R).all()

    def test_oracle_maximal_frozen(self):
        assert oracle_maximal(enc("abb"), enc("bac"), 2) == (5, 2)
        assert oracle_maximal(enc("abb"), enc("bac"), 3) == (6, 3)
        assert oracle_maximal(enc("abb"), enc("abc"), 0) == (4, 0)

    def test_oracle_maximal_k0_is_twice_lcp(self):
        rng = np.random.default_rng(26)
        for _ in range(40):
            xs = tuple(int(v) for v in rng.integers(0, 2, 6))
            ys = tuple(int(v) for v in rng.integers(0, 2, 6))
            lcp = 0
            while lcp < 6 and xs[lcp] == ys[lcp]:
                lcp += 1
            best, errs = oracle_maximal(SymbolString.of(xs), SymbolString.of(ys), 0)
            assert (best, errs) == (2 * lcp, 0)

    def test_negative_budget_rejected(self):
        with pytest.raises(ValueError):
            oracle_maximal(enc("a"), enc("a"), -1)


@settings(max_examples=60, deadline=None)
@given(
    codes=st.lists(st.integers(0, 2), min_size=2, max_size=11),
    k=st.integers(0, 4),
    variant=st.sampled_from(ALL_VARIANTS),
)
def test_scan_equals_dense_oracle(codes, k, variant):
    s = SymbolString.of(codes)
    n = len(s)
    oracle = build_lce(s)
    for c in range(1, n + 1):
        for parity in (Parity.EVEN, Parity.ODD):
            u = c if parity is Parity.EVEN else c - 1
            out = k_differences_scan(
                oracle, CenterConfig.of(n, c, parity), k, variant)
            X = SymbolString.of(tuple(reversed(s.codes[:u])))
            Y = SymbolString.of(s.codes[c:])
            assert (out.i_star + out.j_star, out.e_best) == \
                oracle_maximal(X, Y, k)
