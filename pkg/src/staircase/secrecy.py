"""Overhead accounting and perfect-secrecy verifiers.

Shares of a linear scheme seen by a coalition ``Z`` are ``A_Z s + B_Z r``
with uniform keys ``r``.  They are independent of the secret exactly when
the column space of ``A_Z`` lies inside that of ``B_Z``; the stronger
condition ``rank(B_Z) = z * alpha`` says the coalition could also recover
every key once handed the secret.  ``check_secrecy_rank`` tests both.
``check_secrecy_exhaustive`` compares the distribution of coalition views
by brute force, driving the real encoder.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, ParameterError
from .field import PRIME
from .matrix import Matrix, rank
from .scheme import Layout, SchemeParams, coefficient_maps

DEFAULT_BUDGET = 10**7


def overheads(params: SchemeParams, d: int) -> tuple[Fraction, Fraction]:
    """(CO, RO) in units when ``d`` parties are contacted."""
    if d not in params.d_list:
        raise ParameterError(f"d={d} is not supported; supported: {params.d_list}")
    co = Fraction(params.k * params.z, d - params.z)
    read = Fraction(d * params.prefix_len(d), params.alpha) - params.k
    # the construction reads exactly what it sends
    assert read == co
    return co, read


@dataclass(frozen=True)
class CoalitionResult:
    coalition: tuple[int, ...]
    rank_b: int
    rank_ab: int
    keys_recoverable: bool

    @property
    def independent(self) -> bool:
        return self.rank_ab == self.rank_b


@dataclass(frozen=True)
class SecrecyReport:
    results: tuple[CoalitionResult, ...]
    key_len: int
    require_key_recovery: bool = True

    @property
    def passed(self) -> bool:
        return all(r.independent and (r.keys_recoverable or not self.require_key_recovery)
                   for r in self.results)

    def failures(self) -> list[CoalitionResult]:
        return [r for r in self.results
                if not (r.independent and (r.keys_recoverable or not self.require_key_recovery))]


def _coalition_rows(alpha: int, coalition: Sequence[int], width: int | None = None):
    width = alpha if width is None else width
    return [p * alpha + c for p in coalition for c in range(width)]


def check_secrecy_rank(params: SchemeParams, layout: Layout, visible: int | None = None,
                       require_key_recovery: bool = True) -> SecrecyReport:
    """Rank test over every coalition of ``z`` parties.

    ``visible`` restricts each share to its first symbols, as after a
    threshold change; key recovery is then not expected.
    """
    a, b = coefficient_maps(params, layout)
    f = params.field
    results = []
    for coalition in itertools.combinations(range(params.n), params.z):
        rows = _coalition_rows(layout.cols, coalition, visible)
        bz = Matrix(f, b.data[rows])
        abz = Matrix(f, np.hstack([b.data[rows], a.data[rows]]))
        rb = rank(bz)
        results.append(CoalitionResult(coalition, rb, rank(abz), rb == params.key_len))
    return SecrecyReport(tuple(results), params.key_len, require_key_recovery)


def _all_vectors(q: int, length: int) -> np.ndarray:
    """Every vector of GF(q)^length as rows, lexicographic order."""
    grids = np.indices((q,) * length).reshape(length, -1)
    return grids.T.astype(np.int64)


def check_secrecy_exhaustive(params: SchemeParams, layout: Layout,
                             secret_pairs: Iterable[tuple[Sequence[int], Sequence[int]]] | None = None,
                             budget: int = DEFAULT_BUDGET) -> bool:
    """Compare, for each coalition, the multiset of views over all key choices.

    Without ``secret_pairs`` every secret is enumerated.  The work is
    coalitions x secrets x q^(z alpha) encodings and is refused when it
    exceeds ``budget``.
    """
    from .codec import encode_values

    f = params.field
    if f.kind != PRIME:
        raise ParameterError("exhaustive secrecy checks need a prime field")
    q = f.order
    n_keys = q ** params.key_len
    coalitions = list(itertools.combinations(range(params.n), params.z))
    if secret_pairs is None:
        n_secrets = q ** params.secret_len
        if len(coalitions) * n_secrets * n_keys > budget:
            raise BudgetExceededError(
                f"{len(coalitions) * n_secrets * n_keys} encodings exceed budget {budget}")
        secrets = [tuple(s) for s in _all_vectors(q, params.secret_len).tolist()]
        pairs = [(secrets[0], s) for s in secrets[1:]]
    else:
        pairs = [(tuple(a), tuple(b)) for a, b in secret_pairs]
        secrets = list(dict.fromkeys(s for pair in pairs for s in pair))
        if len(coalitions) * len(secrets) * n_keys > budget:
            raise BudgetExceededError(
                f"{len(coalitions) * len(secrets) * n_keys} encodings exceed budget {budget}")

    all_keys = _all_vectors(q, params.key_len)
    key_columns = [all_keys[:, i] for i in range(params.key_len)]
    if q ** (params.z * layout.cols) >= 1 << 62:
        raise BudgetExceededError("coalition views too large to index")
    weights = q ** np.arange(params.z * layout.cols, dtype=np.int64)
    views: dict[tuple, list[np.ndarray]] = {}
    for s in secrets:
        shares = encode_values(params, layout, list(s), key_columns)
        per_coalition = []
        for coalition in coalitions:
            cols = [np.broadcast_to(np.asarray(shares[p][c], dtype=np.int64), (n_keys,))
                    for p in coalition for c in range(layout.cols)]
            codes = np.stack(cols, axis=1) @ weights
            per_coalition.append(np.sort(codes))
        views[s] = per_coalition
    for s0, s1 in pairs:
        for v0, v1 in zip(views[s0], views[s1]):
            if not np.array_equal(v0, v1):
                return False
    return True


def random_secret_pairs(params: SchemeParams, count: int, seed: int = 0):
    rng = random.Random(seed)
    q = params.field.order
    draw = lambda: tuple(rng.randrange(q) for _ in range(params.secret_len))  # noqa: E731
    return [(draw(), draw()) for _ in range(count)]


@dataclass(frozen=True)
class EntropySummary:
    secret_symbols: int
    key_symbols: int
    share_symbols: int
    share_units: Fraction
    secret_units: int


def entropy_accounting(params: SchemeParams) -> EntropySummary:
    """Entropies in base-q symbols for uniform secrets and keys."""
    assert params.k == params.t - params.z
    return EntropySummary(params.secret_len, params.key_len, params.alpha,
                          Fraction(1), params.k)
