import itertools
import math
import random

import pytest

from staircase.codec import encode
from staircase.errors import ParameterError
from staircase.scheme import (Duplicate, Key, Secret, Zero, build_layout, coefficient_maps,
                              params_delta, params_fixed, params_universal)


def every_scheme(max_n, field, with_delta=False):
    for n in range(2, max_n + 1):
        for z in range(1, n):
            for k in range(1, n - z + 1):
                t = k + z
                yield params_universal(n, k, z, field=field)
                for d in range(t, n + 1):
                    yield params_fixed(n, k, z, d, field=field)
                if with_delta:
                    for m in range(1, n - t + 2):
                        for delta in itertools.combinations(range(t, n + 1), m):
                            yield params_delta(n, k, z, delta, field=field)


def names(layout):
    return [row.split() for row in layout.render().splitlines()]


class TestParams:
    def test_fixed_example(self, gf5):
        p = params_fixed(4, 1, 1, 3, field=gf5)
        assert (p.t, p.alpha, p.d_list) == (2, 2, (3, 2))

    def test_fixed_d_equals_t(self, gf5):
        p = params_fixed(4, 1, 1, 2, field=gf5)
        assert (p.d_list, p.alpha) == ((2,), 1)

    def test_fixed_alpha_formula(self, gf5):
        p = params_fixed(4, 1, 2, 3, field=gf5)
        assert (p.t, p.alpha) == (3, 1)

    def test_universal_example(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        assert p.d_list == (4, 3, 2)
        assert p.alpha_list == (3, 2, 1)
        assert p.alpha == 6
        assert p.h == 3

    def test_universal_degenerate(self, gf5):
        p = params_universal(2, 1, 1, field=gf5)
        assert (p.h, p.alpha) == (1, 1)

    def test_universal_lcm(self, gf7):
        p = params_universal(5, 2, 1, field=gf7)
        assert (p.d_list, p.alpha_list, p.alpha) == ((5, 4, 3), (4, 3, 2), 12)

    def test_delta_full_range_matches_universal(self, gf5):
        u = params_universal(4, 1, 1, field=gf5)
        d = params_delta(4, 1, 1, {2, 3, 4}, field=gf5)
        assert (d.d_list, d.alpha_list, d.alpha) == (u.d_list, u.alpha_list, u.alpha)

    def test_delta_singleton(self, gf7):
        p = params_delta(6, 1, 1, {5}, field=gf7)
        assert (p.d_list, p.alpha) == ((5, 2), 4)

    def test_delta_errors(self, gf7):
        with pytest.raises(ParameterError):
            params_delta(4, 1, 1, set(), field=gf7)
        with pytest.raises(ParameterError, match="<= d <="):
            params_delta(4, 1, 1, {5}, field=gf7)

    @pytest.mark.parametrize("args, pattern", [
        ((4, 1, 0, 3), "z > 0"),
        ((4, 0, 1, 3), "k >= 1"),
        ((4, 2, 3, 5), "k \\+ z <= n|t = k \\+ z <= n"),
        ((4, 1, 1, 5), "d <= n"),
        ((4, 2, 1, 2), "k \\+ z <= d"),
    ])
    def test_fixed_errors_name_the_inequality(self, gf7, args, pattern):
        with pytest.raises(ParameterError, match=pattern):
            params_fixed(*args, field=gf7)

    def test_field_must_exceed_n(self, gf5):
        with pytest.raises(ParameterError, match="q > n"):
            params_universal(5, 1, 1, field=gf5)

    def test_alpha_is_lcm_for_all_universal(self, gf11):
        for p in every_scheme(8, gf11):
            if p.kind != "universal":
                continue
            upper = [d - p.z for d in p.d_list[:-1]]
            assert p.alpha == (math.lcm(*upper) if upper else p.k)
            assert p.d_list[-1] == p.t and p.alpha_list[-1] == p.k


class TestLayouts:
    def test_fixed_example_layout(self, gf5):
        layout = build_layout(params_fixed(4, 1, 1, 3, field=gf5))
        assert layout.grid == (
            (Secret(0), Duplicate((2, 0))),
            (Secret(1), Key(1)),
            (Key(0), Zero()),
        )

    def test_universal_example_layout(self, gf5):
        layout = build_layout(params_universal(4, 1, 1, field=gf5))
        assert names(layout) == [
            ["s1", "s4", "r1*", "s3*", "s6*", "r3*"],
            ["s2", "s5", "r2*", "r4", "r5", "r6"],
            ["s3", "s6", "r3", "0", "0", "0"],
            ["r1", "r2", "0", "0", "0", "0"],
        ]
        assert layout.blocks == ((0, 2), (2, 3), (3, 6))

    def test_plain_threshold_layout(self, gf5):
        layout = build_layout(params_universal(2, 1, 1, field=gf5))
        assert layout.grid == ((Secret(0),), (Key(0),))

    def test_structural_invariants(self, gf11):
        for p in every_scheme(7, gf11, with_delta=True):
            layout = build_layout(p)
            ka = p.secret_len
            # cumulative block columns telescope to k alpha / alpha_j
            for j, (start, stop) in enumerate(layout.blocks):
                assert stop == ka // p.alpha_list[j]
                assert start == (0 if j == 0 else ka // p.alpha_list[j - 1])
                assert layout.block_nonzero_rows(j) == p.d_list[j]
            assert layout.blocks[-1][1] == p.alpha
            cells = [c for row in layout.grid for c in row]
            secrets = sorted(c.index for c in cells if isinstance(c, Secret))
            keys = sorted(c.index for c in cells if isinstance(c, Key))
            assert secrets == list(range(ka))
            assert keys == list(range(p.key_len))
            for r, c in itertools.product(range(layout.rows), range(layout.cols)):
                cell = layout.grid[r][c]
                if isinstance(cell, Duplicate):
                    src = layout.grid[cell.source[0]][cell.source[1]]
                    assert isinstance(src, (Secret, Key))
                    # copies only point at earlier blocks
                    assert cell.source[1] < c

    def test_delta_full_range_cell_identical(self, gf11):
        for n in range(2, 8):
            for z in range(1, n):
                for k in range(1, n - z + 1):
                    u = build_layout(params_universal(n, k, z, field=gf11))
                    d = build_layout(params_delta(n, k, z, range(k + z, n + 1), field=gf11))
                    assert u.grid == d.grid and u.blocks == d.blocks

    def test_fixed_d_equals_t_has_no_copies_or_zeros(self, gf11):
        for p in every_scheme(7, gf11):
            if p.kind == "fixed" and p.d_fixed == p.t:
                cells = [c for row in build_layout(p).grid for c in row]
                assert all(isinstance(c, (Secret, Key)) for c in cells)

    def test_single_delta_matches_fixed_layout(self, gf11):
        # with one supported d the staircase layout is the fixed-d layout padded with zero rows
        for p in every_scheme(7, gf11):
            if p.kind != "fixed":
                continue
            fixed = build_layout(p)
            delta = build_layout(params_delta(p.n, p.k, p.z, {p.d_fixed}, field=gf11))
            assert delta.grid[:p.d_fixed] == fixed.grid
            assert all(isinstance(c, Zero) for row in delta.grid[p.d_fixed:] for c in row)


class TestCoefficientMaps:
    def test_fixed_example_row(self, gf5):
        p = params_fixed(4, 1, 1, 3, field=gf5)
        a, b = coefficient_maps(p, build_layout(p))
        row = 1 * p.alpha + 0
        assert a.data[row].tolist() == [1, 2]
        assert b.data[row].tolist() == [4, 0]

    def test_universal_example_row(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        a, b = coefficient_maps(p, build_layout(p))
        row = 2 * p.alpha + 3
        assert a.data[row].tolist() == [0, 0, 1, 0, 0, 0]
        assert b.data[row].tolist() == [0, 0, 0, 3, 0, 0]

    def test_zero_inputs_give_zero_shares(self, gf5):
        p = params_universal(4, 1, 1, field=gf5)
        shares = encode(p, build_layout(p), [0] * 6, [0] * 6)
        assert all(s.symbols == (0,) * 6 for s in shares)

    def test_maps_agree_with_encoder(self, gf11):
        rng = random.Random(2)
        for p in every_scheme(6, gf11, with_delta=True):
            layout = build_layout(p)
            a, b = coefficient_maps(p, layout)
            s = [rng.randrange(11) for _ in range(p.secret_len)]
            r = [rng.randrange(11) for _ in range(p.key_len)]
            flat = [x for share in encode(p, layout, s, r) for x in share.symbols]
            expected = (a.data @ s + b.data @ r) % 11
            assert flat == expected.tolist()
