"""Command-line entry point.

Every command ends its standard output with one ``result: <value>`` line;
diagnostics go to stderr. Exit codes: 0 ok, 2 usage, 3 resource cap,
4 failed self check.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import circuit as circ
from . import transforms
from .classical import (brute_force_zero_crossings, format_sequence, generate_sequence,
                        zero_crossings_closed_form, zero_crossings_recurrence)
from .core import BitString
from .exceptions import ContractViolation, ResourceError
from .simulator import count_zero_crossings, dump_state, max_qubits, recover_secret, \
    sequency_wht_via_circuit

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_SELFCHECK = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _secret(text: str) -> BitString:
    try:
        return BitString.parse(text)
    except ContractViolation as exc:
        raise argparse.ArgumentTypeError(f"invalid secret {text!r}: use only '0' and '1', MSB first") from exc


def _result(value) -> None:
    print(f"result: {value}")


def _read_text(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _check_n_cap(n: int, args) -> None:
    cap = max_qubits(args.max_qubits)
    if n > cap:
        raise ResourceError(f"n={n} exceeds the simulator cap of {cap} qubits")


def cmd_count(args) -> int:
    s = args.secret
    if args.dump_sequence:
        print(f"sequence: {format_sequence(generate_sequence(s))}")
    if args.method == "quantum":
        _check_n_cap(s.width, args)
        run = count_zero_crossings(s, include_swaps=not args.no_swaps, cap=args.max_qubits)
        if args.dump_state:
            Path(args.dump_state).write_text(dump_state(run.state))
        print(f"oracle_queries: {run.oracle_queries}")
        value = run.count
    elif args.method == "brute":
        value = brute_force_zero_crossings(generate_sequence(s))
    elif args.method == "recurrence":
        value = zero_crossings_recurrence(s)
    else:
        value = zero_crossings_closed_form(s)
    _result(value)
    return EXIT_OK


def cmd_bv(args) -> int:
    _check_n_cap(args.secret.width, args)
    recovered, _, queries = recover_secret(args.secret, cap=args.max_qubits)
    print(f"oracle_queries: {queries}")
    _result(recovered)
    return EXIT_OK if recovered == args.secret else EXIT_SELFCHECK


def cmd_table1(args) -> int:
    ok = True
    print("secret  sequence                 quantum  brute")
    for value in range(8):
        s = BitString(value, 3)
        seq = generate_sequence(s)
        run = count_zero_crossings(s)
        brute = brute_force_zero_crossings(seq)
        agree = run.count == brute and run.oracle_queries == 1
        ok &= agree
        flag = "" if agree else "  MISMATCH"
        print(f"{s}     {format_sequence(seq)}  {run.count:<7}  {brute}{flag}")
    _result("ok" if ok else "mismatch")
    return EXIT_OK if ok else EXIT_SELFCHECK


def cmd_wht(args) -> int:
    try:
        v = transforms.check_vector(transforms.parse_vector(_read_text(args.input)))
    except ContractViolation as exc:
        raise UsageError(str(exc)) from None
    n = v.size.bit_length() - 1
    if args.via == "circuit":
        if args.order != "sequency":
            raise UsageError("--via circuit computes the sequency order only")
        _check_n_cap(n, args)
        if abs(float(v @ v) - 1) > 1e-9:
            raise UsageError("--via circuit requires a unit-norm input vector")
        out = sequency_wht_via_circuit(v, cap=args.max_qubits)[0]
    elif args.via == "matrix":
        m = transforms.sequency_matrix(n) if args.order == "sequency" else transforms.natural_matrix(n)
        out = m @ v
    else:
        out = transforms.fwht_sequency(v) if args.order == "sequency" else transforms.fwht_natural(v)
    Path(args.output).write_text(transforms.format_vector(out))
    _result(f"{out.size} {args.output}")
    return EXIT_OK


def cmd_matrix(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    m = transforms.sequency_matrix(args.n) if args.order == "sequency" else transforms.natural_matrix(args.n)
    Path(args.output).write_text(transforms.format_matrix(m))
    _result(f"{m.shape[0]}x{m.shape[1]} {args.output}")
    return EXIT_OK


def cmd_circuit(args) -> int:
    if args.kind in ("bv", "zero_crossings"):
        if args.secret is None:
            raise UsageError(f"--secret is required for --kind {args.kind}")
        if args.n is not None and args.n != args.secret.width:
            raise UsageError(f"--n {args.n} does not match secret width {args.secret.width}")
        n = args.secret.width
        oracle = circ.build_oracle(args.secret)
        if args.kind == "bv":
            c = circ.build_bv_circuit(oracle, n)
        else:
            c = circ.build_zero_crossings_circuit(oracle, n, include_swaps=not args.no_swaps)
    else:
        if args.n is None or args.n < 1:
            raise UsageError("--n >= 1 is required for --kind sequency_wht")
        c = circ.build_sequency_wht_circuit(args.n)
    text = circ.to_text(c)
    if circ.to_text(circ.from_text(text)) != text:
        print("circuit text failed to round-trip", file=sys.stderr)
        return EXIT_SELFCHECK
    Path(args.output).write_text(text)
    census = circ.gate_counts(c)
    summary = " ".join(f"{k}={v}" for k, v in census.counts.items())
    _result(f"{summary} depth={census.depth}".strip())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqsim", description=__doc__.splitlines()[0])
    parser.add_argument("--max-qubits", type=int, default=None,
                        help="simulator qubit cap (default: $SEQSIM_MAX_QUBITS or 24)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count zero-crossings of the sequence defined by a secret")
    p.add_argument("--secret", type=_secret, required=True, help="MSB-first bit string, e.g. 101")
    p.add_argument("--method", choices=["quantum", "brute", "recurrence", "closed"], default="quantum")
    p.add_argument("--no-swaps", action="store_true", help="drop the swap layer and read bits reversed")
    p.add_argument("--dump-state", metavar="PATH", help="write the final statevector (quantum method)")
    p.add_argument("--dump-sequence", action="store_true", help="print the +1/-1 sequence")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bv", help="recover the secret with one oracle query")
    p.add_argument("--secret", type=_secret, required=True)
    p.set_defaults(func=cmd_bv)

    p = sub.add_parser("table1", help="all eight 3-bit secrets, quantum vs brute force")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("wht", help="transform a CSV vector")
    p.add_argument("--order", choices=["natural", "sequency"], default="sequency")
    p.add_argument("--via", choices=["fast", "matrix", "circuit"], default="fast")
    p.add_argument("--input", required=True, help="one value per line; '-' for stdin")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_wht)

    p = sub.add_parser("matrix", help="write a dense transform matrix as CSV")
    p.add_argument("--order", choices=["natural", "sequency"], default="sequency")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("circuit", help="export a circuit in the text format")
    p.add_argument("--kind", choices=["bv", "zero_crossings", "sequency_wht"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--secret", type=_secret)
    p.add_argument("--no-swaps", action="store_true")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_circuit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"seqsim {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"seqsim {args.command}: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ContractViolation as exc:
        print(f"seqsim {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
