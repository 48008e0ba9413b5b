"""Raising the reconstruction threshold by local share truncation.

A party moving from threshold ``t`` to ``t'`` keeps only the prefix of each
block that a reader contacting ``t'`` parties would have downloaded.  No
communication is needed and the deleted symbols are gone for good.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .codec import Share, access_plan, decode_structured, draw_keys, encode, read_symbols
from .errors import ParameterError
from .scheme import FIXED, Layout, SchemeParams, build_layout
from .secrecy import check_secrecy_rank, overheads


@dataclass(frozen=True)
class ThresholdState:
    original: int
    current: int
    kept: int


def threshold_state(params: SchemeParams, threshold: int) -> ThresholdState:
    check_threshold(params, threshold)
    return ThresholdState(params.t, threshold, params.kept_len(threshold))


def check_threshold(params: SchemeParams, threshold: int):
    if not params.t <= threshold <= params.n:
        raise ParameterError(f"threshold must satisfy {params.t} <= t' <= {params.n}")
    if threshold not in params.d_list:
        if params.kind == FIXED:
            raise ParameterError(f"a fixed-d scheme only supports t' in {params.d_list}")
        raise ParameterError(f"t'={threshold} is not a supported d value {params.d_list}")


def rethreshold(share: Share, threshold: int) -> Share:
    params = share.params
    if threshold < share.threshold:
        raise ParameterError(
            f"cannot lower the threshold from {share.threshold} to {threshold}")
    check_threshold(params, threshold)
    old, new = share.block_len, params.kept_len(threshold)
    symbols = []
    for start in range(0, len(share.symbols), old):
        symbols.extend(share.symbols[start:start + new])
    return Share(params, share.index, share.point, tuple(symbols), threshold)


def storage_cost(params: SchemeParams, threshold: int) -> Fraction:
    """Share size in units after raising the threshold."""
    if threshold <= params.z:
        raise ParameterError(f"threshold must exceed z={params.z}")
    return Fraction(params.k, threshold - params.z)


@dataclass(frozen=True)
class TcssReport:
    threshold: int
    decodes: bool
    size_ok: bool
    secrecy_ok: bool
    overheads_ok: bool
    residual: dict

    @property
    def passed(self) -> bool:
        return self.decodes and self.size_ok and self.secrecy_ok and self.overheads_ok


def verify_tcss(params: SchemeParams, threshold: int, layout: Layout | None = None,
                seed: int = 0) -> TcssReport:
    """Check that truncated shares still behave as a threshold-``t'`` scheme."""
    layout = layout or build_layout(params)
    rng = random.Random(seed)
    q = params.field.order
    secret = [rng.randrange(q) for _ in range(params.secret_len)]
    keys = draw_keys(params, rng.randbytes)
    shares = [rethreshold(s, threshold) for s in encode(params, layout, secret, keys)]
    kept = params.kept_len(threshold)

    decodes = True
    for subset in itertools.combinations(range(params.n), threshold):
        plan = access_plan(params, subset, threshold)
        got = decode_structured(params, layout, plan, read_symbols(plan, shares))
        decodes &= [int(x) for x in got] == secret

    size_ok = all(len(s.symbols) == kept for s in shares)
    size_ok &= Fraction(kept, params.alpha) == storage_cost(params, threshold)

    secrecy_ok = check_secrecy_rank(params, layout, visible=kept,
                                    require_key_recovery=False).passed

    residual = {}
    overheads_ok = True
    for d in params.d_list:
        if d < threshold:
            continue
        plan = access_plan(params, range(d), threshold)
        co, ro = overheads(params, d)
        measured = Fraction(plan.total_symbols, params.alpha) - params.k
        residual[d] = (co, ro)
        overheads_ok &= (plan.d == d and plan.symbols_per_party <= kept
                         and measured == co == Fraction(params.k * params.z, d - params.z))
    return TcssReport(threshold, decodes, size_ok, secrecy_ok, overheads_ok, residual)
