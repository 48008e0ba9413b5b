"""Built-in verification suite behind ``staircase selftest``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import golden
from .codec import access_plan, decode_oracle, decode_structured, draw_keys, encode, read_symbols
from .field import Field, binary8_field, prime_field
from .matrix import rank, vandermonde
from .scheme import (Key, SchemeParams, ZERO, build_layout, coefficient_maps, params_fixed,
                     params_universal)
from .secrecy import check_secrecy_rank
from .tcss import verify_tcss


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def all_schemes(max_n: int, field: Field) -> Iterator[SchemeParams]:
    """Every universal and fixed-d scheme with 2 <= n <= max_n."""
    for n in range(2, max_n + 1):
        for z in range(1, n):
            for k in range(1, n - z + 1):
                yield params_universal(n, k, z, field=field)
                for d in range(k + z, n + 1):
                    yield params_fixed(n, k, z, d, field=field)


def _field_axioms(field: Field, triples) -> bool:
    f = field
    for a, b, c in triples:
        if f.add(a, b) != f.add(b, a) or f.mul(a, b) != f.mul(b, a):
            return False
        if f.add(f.add(a, b), c) != f.add(a, f.add(b, c)):
            return False
        if f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c)):
            return False
        if f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)):
            return False
        if f.add(a, 0) != a or f.mul(a, 1) != a or f.add(a, f.neg(a)) != 0:
            return False
        if a and (f.mul(a, f.inv(a)) != 1 or f.pow(a, f.order - 1) != 1):
            return False
    return True


def check_fields() -> bool:
    ok = True
    for p in (5, 7):
        f = prime_field(p)
        ok &= _field_axioms(f, itertools.product(range(p), repeat=3))
    rng = random.Random(1)
    triples = [(rng.randrange(256), rng.randrange(256), rng.randrange(256)) for _ in range(10_000)]
    return ok and _field_axioms(binary8_field(), triples)


def check_vandermonde(max_n: int) -> bool:
    f = prime_field(11)
    for n in range(1, min(max_n, 10) + 1):
        v = vandermonde(f, range(1, n + 1), n)
        for m in range(1, n + 1):
            for rows in itertools.combinations(range(n), m):
                for start in range(n - m + 1):
                    if rank(v.submatrix(rows, range(start, start + m))) != m:
                        return False
    return True


def _table_matches(params: SchemeParams, table) -> bool:
    a, b = coefficient_maps(params, build_layout(params))
    alpha = params.alpha
    for party, column in enumerate(table):
        for pos, text in enumerate(column):
            ea, eb = golden.parse_form(text, params.secret_len, params.key_len)
            row = party * alpha + pos
            if a.data[row].tolist() != ea or b.data[row].tolist() != eb:
                return False
    return True


def check_golden() -> bool:
    gf5 = prime_field(5)
    fixed = params_fixed(4, 1, 1, 3, field=gf5)
    uni = params_universal(4, 1, 1, field=gf5)
    rendered = [row.split() for row in build_layout(uni).render().splitlines()]
    return (_table_matches(fixed, golden.FIXED_4113) and _table_matches(uni, golden.UNIVERSAL_411)
            and rendered == golden.UNIVERSAL_411_LAYOUT)


def check_roundtrips(max_n: int, seed: int = 0) -> bool:
    rng = random.Random(seed)
    f = prime_field(11)
    for params in all_schemes(max_n, f):
        layout = build_layout(params)
        secret = [rng.randrange(11) for _ in range(params.secret_len)]
        shares = encode(params, layout, secret, draw_keys(params, rng.randbytes))
        for d in params.d_list:
            for subset in itertools.combinations(range(params.n), d):
                plan = access_plan(params, subset)
                got = decode_structured(params, layout, plan, read_symbols(plan, shares))
                if got != secret:
                    return False
            plan = access_plan(params, rng.sample(range(params.n), d))
            if decode_oracle(params, layout, plan, read_symbols(plan, shares)) != secret:
                return False
    return True


def mutate_layout(layout):
    """Zero out the fresh keys of the second block, leaving copies unprotected."""
    if len(layout.blocks) < 2:
        raise ValueError("layout has a single block")
    start, stop = layout.blocks[1]
    cells = {(r, c): ZERO for r in range(layout.rows) for c in range(start, stop)
             if isinstance(layout.grid[r][c], Key)}
    return layout.replace(cells)


def check_secrecy(max_n: int, inject_fault: bool = False) -> bool:
    gf5 = prime_field(5)
    example = params_fixed(4, 1, 1, 3, field=gf5)
    layout = build_layout(example)
    if inject_fault:
        layout = mutate_layout(layout)
    if not check_secrecy_rank(example, layout).passed:
        return False
    f = prime_field(11)
    return all(check_secrecy_rank(p, build_layout(p)).passed for p in all_schemes(max_n, f))


def check_tcss() -> bool:
    uni = params_universal(4, 1, 1, field=prime_field(5))
    return all(verify_tcss(uni, t).passed for t in (2, 3, 4))


def run(max_n: int = 6, inject_fault: bool = False,
        report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    checks = [
        ("field axioms GF(5), GF(7), GF(2^8)", check_fields),
        (f"consecutive-column Vandermonde windows, n <= {max_n}", lambda: check_vandermonde(max_n)),
        ("golden vectors (4,1,1,3) and (4,1,1) over GF(5)", check_golden),
        (f"roundtrip every d-subset, n <= {max_n} over GF(11)", lambda: check_roundtrips(max_n)),
        (f"secrecy rank criterion, n <= {max_n} over GF(11)",
         lambda: check_secrecy(max_n, inject_fault)),
        ("threshold change (4,1,1) over GF(5)", check_tcss),
    ]
    results = []
    for name, fn in checks:
        try:
            res = CheckResult(name, bool(fn()))
        except Exception as exc:  # noqa: BLE001 - report, don't abort the suite
            res = CheckResult(name, False, f"{type(exc).__name__}: {exc}")
        results.append(res)
        if report:
            report(res)
    return results
