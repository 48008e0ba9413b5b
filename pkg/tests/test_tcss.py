import random
from fractions import Fraction

import pytest

from staircase.codec import access_plan, decode_structured, draw_keys, encode, read_symbols
from staircase.errors import InsufficientPartiesError, ParameterError
from staircase.scheme import build_layout, params_delta, params_fixed, params_universal
from staircase.tcss import (check_threshold, rethreshold, storage_cost, threshold_state,
                            verify_tcss)


@pytest.fixture
def uni(gf5):
    p = params_universal(4, 1, 1, field=gf5)
    layout = build_layout(p)
    secret = [1, 2, 3, 4, 0, 1]
    return p, layout, secret, encode(p, layout, secret, [2, 2, 0, 4, 1, 3])


def test_truncation_lengths(uni):
    p, _, _, shares = uni
    s3 = rethreshold(shares[0], 3)
    assert s3.symbols == shares[0].symbols[:3] and s3.threshold == 3
    s4 = rethreshold(s3, 4)
    assert s4.symbols == shares[0].symbols[:2] and s4.threshold == 4
    assert threshold_state(p, 4).kept == 2


def test_same_threshold_is_identity(uni):
    _, _, _, shares = uni
    assert rethreshold(shares[1], 2).symbols == shares[1].symbols


def test_cannot_lower(uni):
    _, _, _, shares = uni
    with pytest.raises(ParameterError, match="lower"):
        rethreshold(rethreshold(shares[0], 4), 3)


def test_out_of_range(uni):
    p, _, _, shares = uni
    with pytest.raises(ParameterError):
        rethreshold(shares[0], 5)
    with pytest.raises(ParameterError):
        check_threshold(p, 1)


def test_fixed_kind_only_at_d(gf5):
    p = params_fixed(4, 1, 1, 3, field=gf5)
    share = encode(p, build_layout(p), [1, 1], [0, 0])[0]
    with pytest.raises(ParameterError, match="fixed"):
        rethreshold(share, 4)
    assert rethreshold(share, 3).symbols == share.symbols[:1]


def test_delta_unsupported_threshold(gf11):
    p = params_delta(6, 1, 1, {4, 6}, field=gf11)
    with pytest.raises(ParameterError):
        check_threshold(p, 5)
    check_threshold(p, 4)


def test_storage_cost(gf5):
    p = params_universal(4, 1, 1, field=gf5)
    assert storage_cost(p, 3) == Fraction(1, 2)
    assert storage_cost(p, 4) == Fraction(1, 3)
    assert storage_cost(p, 2) == 1
    with pytest.raises(ParameterError):
        storage_cost(p, 1)


def test_truncated_below_threshold_fails(uni):
    p, layout, _, shares = uni
    short = [rethreshold(s, 4) for s in shares]
    with pytest.raises(InsufficientPartiesError):
        access_plan(p, {0, 1, 2}, threshold=short[0].threshold)
    plan = access_plan(p, {0, 1, 2, 3}, threshold=4)
    assert decode_structured(p, layout, plan, read_symbols(plan, short)) == uni[2]


@pytest.mark.parametrize("n,k,z,t", [(4, 1, 1, 3), (4, 1, 1, 4), (5, 2, 1, 4), (5, 1, 2, 4),
                                     (6, 2, 2, 5)])
def test_verify_tcss(gf7, n, k, z, t):
    rep = verify_tcss(params_universal(n, k, z, field=gf7), t)
    assert rep.passed, rep


def test_verify_tcss_delta(gf11):
    p = params_delta(6, 2, 1, {3, 5, 6}, field=gf11)
    for t in (5, 6):
        assert verify_tcss(p, t).passed


def test_truncation_commutes(gf11):
    rng = random.Random(5)
    p = params_universal(6, 1, 2, field=gf11)
    layout = build_layout(p)
    secret = [rng.randrange(11) for _ in range(p.secret_len)]
    for share in encode(p, layout, secret, draw_keys(p, rng.randbytes)):
        assert rethreshold(rethreshold(share, 4), 6).symbols == rethreshold(share, 6).symbols


def test_truncated_share_is_read_prefix(gf11):
    p = params_universal(6, 2, 1, field=gf11)
    layout = build_layout(p)
    shares = encode(p, layout, [1] * p.secret_len, [2] * p.key_len)
    for t in p.d_list:
        plan = access_plan(p, range(t))
        for s in shares[:t]:
            kept = rethreshold(s, t).symbols
            assert list(plan.positions[s.index]) == list(range(len(kept)))
