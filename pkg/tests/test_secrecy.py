from fractions import Fraction

import pytest

from staircase.errors import BudgetExceededError, ParameterError
from staircase.field import binary8_field
from staircase.scheme import build_layout, params_delta, params_fixed, params_universal
from staircase.secrecy import (check_secrecy_exhaustive, check_secrecy_rank, entropy_accounting,
                               overheads, random_secret_pairs)
from staircase.selftest import mutate_layout


class TestOverheads:
    def test_fixed_example(self, gf5):
        p = params_fixed(4, 1, 1, 3, field=gf5)
        assert overheads(p, 3) == (Fraction(1, 2), Fraction(1, 2))
        # contacting only t parties costs a full unit over the secret
        assert Fraction(1 * 1, 2 - 1) == 1

    def test_universal_example(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        assert overheads(p, 4)[0] == Fraction(1, 3)
        assert overheads(p, 3)[0] == Fraction(1, 2)
        assert overheads(p, 2)[0] == 1

    def test_unsupported_d(self, gf5):
        with pytest.raises(ParameterError):
            overheads(params_fixed(4, 1, 1, 3, field=gf5), 4)

    def test_at_threshold_equals_z(self, gf11):
        for n in range(2, 9):
            for z in range(1, n):
                for k in range(1, n - z + 1):
                    p = params_universal(n, k, z, field=gf11)
                    co, ro = overheads(p, p.t)
                    assert co == ro == Fraction(k * z, k)
                    assert co == z

    def test_strictly_decreasing(self, gf11):
        for n in range(3, 9):
            for z in range(1, n):
                for k in range(1, n - z + 1):
                    p = params_universal(n, k, z, field=gf11)
                    cos = [overheads(p, d)[0] for d in sorted(p.d_list)]
                    assert all(a > b for a, b in zip(cos, cos[1:]))

    def test_fraction_type(self):
        co, ro = overheads(params_universal(5, 2, 1, field=binary8_field()), 4)
        assert isinstance(co, Fraction) and co == Fraction(2, 3) and ro == co


class TestRankCriterion:
    def test_fixed_example(self, gf5):
        p = params_fixed(4, 1, 1, 3, field=gf5)
        rep = check_secrecy_rank(p, build_layout(p))
        assert rep.passed and len(rep.results) == 4
        assert all(r.rank_b == 2 and r.rank_ab == 2 for r in rep.results)

    def test_universal_example(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        assert check_secrecy_rank(p, build_layout(p)).passed

    def test_mutated_layout_fails(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        rep = check_secrecy_rank(p, mutate_layout(build_layout(p)))
        assert not rep.passed and rep.failures()

    def test_no_keys_leaks(self, gf5):
        p = params_fixed(4, 1, 1, 3, field=gf5)
        layout = build_layout(p)
        cells = {(r, c): layout.grid[0][0] for r in range(layout.rows) for c in range(layout.cols)
                 if type(layout.grid[r][c]).__name__ == "Key"}
        rep = check_secrecy_rank(p, layout.replace(cells))
        assert not rep.passed
        assert all(not r.independent for r in rep.failures())

    def test_delta_schemes(self, gf11):
        for delta in ({4, 6}, {5}, {3, 5, 6}):
            p = params_delta(6, 2, 1, delta, field=gf11)
            assert check_secrecy_rank(p, build_layout(p)).passed

    def test_truncated_view(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        rep = check_secrecy_rank(p, build_layout(p), visible=2, require_key_recovery=False)
        assert rep.passed
        assert not check_secrecy_rank(p, build_layout(p), visible=2).passed


class TestExhaustive:
    def test_fixed_example_full(self, gf5):
        p = params_fixed(4, 1, 1, 3, field=gf5)
        assert check_secrecy_exhaustive(p, build_layout(p))

    def test_small_universal_full(self, gf5):
        p = params_universal(3, 1, 1, field=gf5)
        assert check_secrecy_exhaustive(p, build_layout(p))

    def test_universal_sampled(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        pairs = random_secret_pairs(p, 20, seed=1)
        assert check_secrecy_exhaustive(p, build_layout(p), pairs)

    def test_detects_mutation(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        pairs = random_secret_pairs(p, 5, seed=2)
        assert not check_secrecy_exhaustive(p, mutate_layout(build_layout(p)), pairs)

    def test_budget_refusal(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        with pytest.raises(BudgetExceededError):
            check_secrecy_exhaustive(p, build_layout(p))
        with pytest.raises(BudgetExceededError):
            check_secrecy_exhaustive(p, build_layout(p), random_secret_pairs(p, 2), budget=1000)

    def test_binary_field_refused(self):
        p = params_fixed(3, 1, 1, 2, field=binary8_field())
        with pytest.raises(ParameterError):
            check_secrecy_exhaustive(p, build_layout(p))

    def test_rank_agrees_with_enumeration(self, gf5, gf7):
        cases = [params_fixed(3, 1, 1, 2, field=gf7), params_fixed(3, 1, 1, 3, field=gf5),
                 params_fixed(4, 2, 1, 3, field=gf5), params_fixed(4, 1, 2, 3, field=gf5),
                 params_universal(3, 1, 2, field=gf5), params_delta(4, 1, 1, {4}, field=gf5)]
        for p in cases:
            layout = build_layout(p)
            rank_ok = check_secrecy_rank(p, layout, require_key_recovery=False).passed
            pairs = random_secret_pairs(p, 6, seed=3)
            assert rank_ok and check_secrecy_exhaustive(p, layout, pairs)


def test_entropy_accounting(gf5, gf7):
    e = entropy_accounting(params_universal(4, 1, 1, field=gf5))
    assert (e.secret_symbols, e.key_symbols, e.share_symbols) == (6, 6, 6)
    assert e.share_units == 1 and e.secret_units == 1
    e = entropy_accounting(params_fixed(5, 2, 1, 4, field=gf7))
    assert (e.secret_symbols, e.key_symbols, e.share_symbols) == (6, 3, 3)
    assert e.secret_units == 2
