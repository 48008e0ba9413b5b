"""Command line interface: split, reconstruct, inspect, rethreshold, plan, selftest.

Exit codes: 0 success, 2 parameter error, 3 insufficient parties,
4 format or corruption error, 5 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import selftest
from .codec import RandomSource, access_plan, decode_structured, encode_values, random_symbols
from .errors import FormatError, ParameterError, StaircaseError
from .field import binary8_field
from .scheme import (DELTA, FIXED, UNIVERSAL, SchemeParams, build_layout, params_delta,
                     params_fixed, params_universal)
from .secrecy import overheads
from .sharefile import ShareHeader, read_header, read_prefix, read_share, with_threshold, write_share
from .tcss import check_threshold, storage_cost

EXIT_OK = 0
EXIT_IO = 5


def make_params(n: int, k: int, z: int, kind: str = UNIVERSAL, d: int | None = None,
                delta: Sequence[int] | None = None) -> SchemeParams:
    field = binary8_field()
    if kind == FIXED:
        if d is None:
            raise ParameterError("--d is required for --kind fixed")
        return params_fixed(n, k, z, d, field=field)
    if kind == DELTA:
        return params_delta(n, k, z, delta or (), field=field)
    if kind == UNIVERSAL:
        return params_universal(n, k, z, field=field)
    raise ParameterError(f"unknown kind {kind!r}")


def fmt_units(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- split ------------------------------------------------------------------

def split_file(input_path, params: SchemeParams, out_dir,
               source: RandomSource | None = None) -> list[Path]:
    data = Path(input_path).read_bytes()
    block = params.secret_len
    blocks = max(1, math.ceil(len(data) / block))
    padded = np.zeros(blocks * block, dtype=np.int64)
    padded[:len(data)] = np.frombuffer(data, dtype=np.uint8)
    secret = padded.reshape(blocks, block)
    keys = random_symbols(params.field, blocks * params.key_len, source).reshape(
        blocks, params.key_len)

    layout = build_layout(params)
    rows = encode_values(params, layout, [secret[:, i] for i in range(block)],
                         [keys[:, i] for i in range(params.key_len)])
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = Path(input_path).name
    paths = []
    for p, row in enumerate(rows):
        payload = np.stack([np.broadcast_to(x, (blocks,)) for x in row], axis=1)
        header = ShareHeader.for_params(params, p, params.t, len(data), blocks)
        path = out_dir / f"{name}.{p + 1}.scss"
        write_share(path, header, payload)
        paths.append(path)
    return paths


# -- reconstruct ------------------------------------------------------------

@dataclass(frozen=True)
class ReconstructReport:
    parties: tuple[int, ...]
    d: int
    bytes_read: dict[int, int]
    co: Fraction

    @property
    def total_bytes(self) -> int:
        return sum(self.bytes_read.values())


def load_headers(paths) -> dict[int, tuple[Path, ShareHeader]]:
    shares: dict[int, tuple[Path, ShareHeader]] = {}
    key = None
    for path in paths:
        header = read_header(path)
        if key is None:
            key = header.set_key()
        elif header.set_key() != key:
            raise FormatError(f"{path} does not belong to the same share set")
        shares.setdefault(header.index, (Path(path), header))
    if not shares:
        raise ParameterError("no share files given")
    return shares


def reconstruct_files(paths, output) -> ReconstructReport:
    shares = load_headers(paths)
    header = next(iter(shares.values()))[1]
    params = header.params()
    plan = access_plan(params, shares, header.threshold)
    width = plan.symbols_per_party
    symbols = {}
    read = {}
    for p in plan.parties:
        path, h = shares[p]
        arr, nbytes = read_prefix(path, h, width)
        read[p] = nbytes
        for c in range(width):
            symbols[(p, c)] = arr[:, c]
    secret = decode_structured(params, build_layout(params), plan, symbols)
    blocks = np.stack([np.broadcast_to(s, (header.block_count,)) for s in secret], axis=1)
    data = blocks.astype(np.uint8).tobytes()[:header.secret_len]

    output = Path(output)
    fd, tmp = tempfile.mkstemp(dir=output.parent, prefix=output.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return ReconstructReport(plan.parties, plan.d, read, plan.co)


# -- inspect / rethreshold / plan -------------------------------------------

def inspect_text(path) -> str:
    header = read_header(path)
    params = header.params()
    lines = [
        f"file:            {path}",
        f"scheme:          {header.kind} (n={header.n}, k={header.k}, z={header.z}"
        + (f", d={header.d}" if header.kind == FIXED else "")
        + (f", delta={list(header.delta)}" if header.kind == DELTA else "") + ")",
        f"field:           {params.field!r}",
        f"share index:     {header.index} (evaluation point {header.point})",
        f"threshold:       t={params.t}, current t'={header.threshold}",
        f"alpha:           {params.alpha} symbols per block (1 unit)",
        f"kept per block:  {header.block_len} symbols",
        f"blocks:          {header.block_count}",
        f"secret length:   {header.secret_len} bytes",
        f"payload:         {header.payload_len} bytes",
        f"supported d:     {list(params.d_list)}",
        "",
        "   d  read/party      CO      RO",
    ]
    for d in params.d_list:
        co, ro = overheads(params, d)
        lines.append(f"{d:>4}  {params.prefix_len(d):>10}  {fmt_units(co):>6}  {fmt_units(ro):>6}")
    lines += ["", "  t'  kept/block      SC"]
    for t in params.d_list:
        lines.append(f"{t:>4}  {params.kept_len(t):>10}  {fmt_units(storage_cost(params, t)):>6}")
    return "\n".join(lines)


def rethreshold_file(path, threshold: int, out=None, in_place: bool = False) -> Path:
    header, payload = read_share(path)
    params = header.params()
    if threshold < header.threshold:
        raise ParameterError(
            f"cannot lower the threshold from {header.threshold} to {threshold}")
    check_threshold(params, threshold)
    kept = params.kept_len(threshold)
    if in_place:
        target = Path(path)
    elif out is not None:
        target = Path(out)
    else:
        p = Path(path)
        target = p.with_name(f"{p.stem}.t{threshold}{p.suffix}")
    write_share(target, with_threshold(header, threshold), payload[:, :kept])
    return target


def plan_text(params: SchemeParams, contacted: int) -> str:
    if contacted > params.n:
        raise ParameterError(f"cannot contact {contacted} of {params.n} parties")
    plan = access_plan(params, range(contacted))
    return (f"contact {plan.d} parties {list(plan.parties)}; "
            f"read {plan.symbols_per_party} symbols/party, "
            f"CO={fmt_units(plan.co)} unit, RO={fmt_units(plan.ro)} unit")


# -- argument parsing -------------------------------------------------------

def _delta_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --delta list {text!r}") from None


def _add_scheme_flags(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, required=True, help="number of parties")
    p.add_argument("--k", type=int, required=True, help="secret size in units")
    p.add_argument("--z", type=int, required=True, help="collusion bound")
    p.add_argument("--kind", choices=(FIXED, UNIVERSAL, DELTA), default=UNIVERSAL)
    p.add_argument("--d", type=int, help="reconstruction size for --kind fixed")
    p.add_argument("--delta", type=_delta_list, help="comma-separated d values for --kind delta")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="staircase",
                                     description="Staircase-code secret sharing for files.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="split a file into n shares")
    p.add_argument("input")
    _add_scheme_flags(p)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("reconstruct", help="rebuild a file from shares")
    p.add_argument("shares", nargs="+")
    p.add_argument("--out", required=True, help="output file")

    p = sub.add_parser("inspect", help="describe a share file")
    p.add_argument("share")

    p = sub.add_parser("rethreshold", help="raise the threshold of one share")
    p.add_argument("share")
    p.add_argument("threshold", type=int)
    p.add_argument("--in-place", action="store_true")
    p.add_argument("--out")

    p = sub.add_parser("plan", help="print the read plan for a number of contacted parties")
    _add_scheme_flags(p)
    p.add_argument("contacted", type=int)

    p = sub.add_parser("selftest", help="run the built-in verification suite")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def _params_from(args) -> SchemeParams:
    return make_params(args.n, args.k, args.z, args.kind, args.d, args.delta)


def main(argv: Sequence[str] | None = None, out: Callable[[str], None] = print) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "split":
            paths = split_file(args.input, _params_from(args), args.out)
            for path in paths:
                out(str(path))
        elif args.command == "reconstruct":
            rep = reconstruct_files(args.shares, args.out)
            per_party = ", ".join(f"{p}:{b}" for p, b in rep.bytes_read.items())
            out(f"reconstructed {args.out} from d={rep.d} parties {list(rep.parties)}")
            out(f"bytes read: {rep.total_bytes} total ({per_party}); CO={fmt_units(rep.co)} unit")
        elif args.command == "inspect":
            out(inspect_text(args.share))
        elif args.command == "rethreshold":
            out(str(rethreshold_file(args.share, args.threshold, args.out, args.in_place)))
        elif args.command == "plan":
            out(plan_text(_params_from(args), args.contacted))
        elif args.command == "selftest":
            results = selftest.run(args.max_n, args.inject_fault,
                                   report=lambda r: out(f"{'PASS' if r.passed else 'FAIL'}  "
                                                        f"{r.name}{'  ' + r.detail if r.detail else ''}"))
            return EXIT_OK if all(r.passed for r in results) else 1
    except StaircaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
