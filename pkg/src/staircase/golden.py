"""Reference share tables for the two worked GF(5) examples.

Each entry is the share symbol written as a linear form in the secret
symbols ``s1, s2, ...`` and keys ``r1, r2, ...``.  ``FIXED_4113`` is the
(4,1,1,3) code; ``UNIVERSAL_411`` is the (4,1,1) universal code.  Outer
index is the party, inner index the symbol position.
"""

from __future__ import annotations

import re

FIXED_4113 = [
    ["s1+s2+r1", "r1+r2"],
    ["s1+2s2+4r1", "r1+2r2"],
    ["s1+3s2+4r1", "r1+3r2"],
    ["s1+4s2+r1", "r1+4r2"],
]

_U_BY_SYMBOL = [
    ["s1+s2+s3+r1", "s1+2s2+4s3+3r1", "s1+3s2+4s3+2r1", "s1+4s2+s3+4r1"],
    ["s4+s5+s6+r2", "s4+2s5+4s6+3r2", "s4+3s5+4s6+2r2", "s4+4s5+s6+4r2"],
    ["r1+r2+r3", "r1+2r2+4r3", "r1+3r2+4r3", "r1+4r2+r3"],
    ["s3+r4", "s3+2r4", "s3+3r4", "s3+4r4"],
    ["s6+r5", "s6+2r5", "s6+3r5", "s6+4r5"],
    ["r3+r6", "r3+2r6", "r3+3r6", "r3+4r6"],
]
UNIVERSAL_411 = [list(col) for col in zip(*_U_BY_SYMBOL)]

# message matrix of the (4,1,1) universal code; a trailing * marks a copied cell
UNIVERSAL_411_LAYOUT = [
    ["s1", "s4", "r1*", "s3*", "s6*", "r3*"],
    ["s2", "s5", "r2*", "r4", "r5", "r6"],
    ["s3", "s6", "r3", "0", "0", "0"],
    ["r1", "r2", "0", "0", "0", "0"],
]

_TERM = re.compile(r"(\d*)([sr])(\d+)")


def parse_form(text: str, secret_len: int, key_len: int) -> tuple[list[int], list[int]]:
    """Turn ``"s1+2s2+4r1"`` into coefficient vectors over secrets and keys."""
    a, b = [0] * secret_len, [0] * key_len
    for term in text.split("+"):
        m = _TERM.fullmatch(term.strip())
        if not m:
            raise ValueError(f"cannot parse term {term!r}")
        coeff = int(m.group(1) or 1)
        target = a if m.group(2) == "s" else b
        target[int(m.group(3)) - 1] += coeff
    return a, b
