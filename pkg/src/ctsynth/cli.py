"""Command-line front end: synthesize, prepare, evaluate, verify, build tables.

All machine-readable output goes to stdout as JSON and is byte-identical
across runs for identical inputs; timing lines go to stderr.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
import time
from pathlib import Path
from typing import Optional

from .ring import RingFormatError
from .synthesis import (
    CertificateError,
    Circuit,
    CircuitFormatError,
    InternalInvariantError,
    LookupTable,
    SynthesisError,
    TableMissError,
    build_table,
    certify_optimality,
    enumerate_sde_le3,
    prepare_state,
    synthesize_info,
)
from .unitary import RingState, RingUnitary, StateError, UnitarityError

_INPUT_ERRORS = (
    RingFormatError,
    UnitarityError,
    StateError,
    CircuitFormatError,
    json.JSONDecodeError,
    OSError,
)
_INTERNAL_ERRORS = (TableMissError, InternalInvariantError, CertificateError)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _timing(label: str, seconds: float) -> None:
    sys.stderr.write(f"{label}: {seconds:.4f}s\n")


def _load_table(path: Optional[str]) -> LookupTable:
    if path is None:
        return build_table()
    p = Path(path)
    if p.exists():
        return LookupTable.load(p)
    table = build_table()
    table.save(p)
    return table


def _read_source(value: str) -> str:
    """Read JSON text from '-', a file path, or an inline literal."""
    if value == "-":
        return sys.stdin.read()
    p = Path(value)
    if p.exists():
        return p.read_text()
    return value


def _matrix_from_args(args, source: str) -> RingUnitary:
    return RingUnitary.from_json(json.loads(_read_source(source)))


def _report(info, certificate) -> dict:
    counts = info.circuit.counts()
    return {
        "circuit": info.circuit.text,
        "counts": counts.to_json(),
        "phase_k": info.phase_k,
        "certificate": certificate.to_json() if certificate is not None else None,
    }


def _synthesize_report(u: RingUnitary, table: LookupTable, args) -> dict:
    info = synthesize_info(
        u, table, negative_powers=args.negative_powers, prefer_p=args.prefer_p
    )
    certificate = None
    if u.sde_measure() >= 4:
        certificate = certify_optimality(u, info.circuit)
    return _report(info, certificate)


def _cmd_synth(args) -> int:
    table = _load_table(args.table)
    t0 = time.perf_counter()
    if args.word is not None:
        u = Circuit.from_text(args.word).evaluate()
        u.validate()
        _emit(_synthesize_report(u, table, args))
    else:
        matrices = [_matrix_from_args(args, src) for src in args.matrix]
        if args.jobs > 1 and len(matrices) > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(
                    pool.map(_worker_synth, [(m.to_json(), args.table,
                                              args.negative_powers, args.prefer_p)
                                             for m in matrices])
                )
        else:
            reports = [_synthesize_report(m, table, args) for m in matrices]
        _emit(reports[0] if len(reports) == 1 else reports)
    _timing("synth", time.perf_counter() - t0)
    return 0


def _worker_synth(payload) -> dict:
    matrix_json, table_path, negative_powers, prefer_p = payload
    table = _load_table(table_path)
    u = RingUnitary.from_json(matrix_json)
    info = synthesize_info(u, table, negative_powers=negative_powers, prefer_p=prefer_p)
    certificate = certify_optimality(u, info.circuit) if u.sde_measure() >= 4 else None
    return _report(info, certificate)


def _cmd_prepare(args) -> int:
    table = _load_table(args.table)
    t0 = time.perf_counter()
    state = RingState.from_json(json.loads(_read_source(args.state)))
    circuit = prepare_state(
        state, table, negative_powers=args.negative_powers, prefer_p=args.prefer_p
    )
    _emit(
        {
            "circuit": circuit.text,
            "counts": circuit.counts().to_json(),
            "phase_k": 0,
            "certificate": None,
        }
    )
    _timing("prepare", time.perf_counter() - t0)
    return 0


def _cmd_eval(args) -> int:
    u = Circuit.from_text(args.word).evaluate()
    _emit(u.to_json())
    return 0


def _cmd_verify_lemma(args) -> int:
    from .verifier import find_counterexample

    t0 = time.perf_counter()
    witness = find_counterexample()
    _timing("verify-lemma", time.perf_counter() - t0)
    if witness is None:
        _emit({"result": True})
        return 0
    _emit(
        {
            "result": False,
            "witness": {"x": list(witness.x), "y": list(witness.y), "d": witness.d},
        }
    )
    return 2


def _cmd_gen_table(args) -> int:
    t0 = time.perf_counter()
    table = build_table()
    table.save(args.out)
    _timing("gen-table", time.perf_counter() - t0)
    _emit(
        {
            "path": args.out,
            "entry_count": table.entry_count,
            "max_circuit_length": table.max_circuit_length,
        }
    )
    return 0


def _cmd_oracle_check(args) -> int:
    t0 = time.perf_counter()
    table = build_table()
    classes = enumerate_sde_le3()
    keys = {u.canonical()[0] for u in classes}
    match = keys == set(table.entries)
    _timing("oracle-check", time.perf_counter() - t0)
    _emit(
        {
            "table_entries": table.entry_count,
            "enumeration_classes": len(keys),
            "match": match,
        }
    )
    return 0 if match else 3


def _add_mode_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--table", help="path to a cached lookup table (created if absent)")
    parser.add_argument(
        "--negative-powers",
        action="store_true",
        help="descend with powers {0,-1,-2,-3} instead of {0,1,2,3}",
    )
    parser.add_argument(
        "--prefer-p",
        action="store_true",
        help="rewrite cubes of T as P·T instead of Z·T†",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctsynth",
        description="Exact synthesis of single-qubit Clifford+T circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a ring unitary into a circuit")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument(
        "--matrix",
        action="append",
        help="matrix JSON (inline, file path, or '-' for stdin); repeatable",
    )
    src.add_argument("--word", help="circuit text over H/T/t/P/p/Z/X/Y to evaluate and re-synthesize")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for batch synthesis")
    _add_mode_flags(p)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("prepare", help="synthesize a circuit preparing a state from |0>")
    p.add_argument("--state", required=True, help="state JSON (inline, file path, or '-')")
    _add_mode_flags(p)
    p.set_defaults(func=_cmd_prepare)

    p = sub.add_parser("eval", help="evaluate a circuit word to a matrix")
    p.add_argument("--word", required=True, help="circuit text")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify-lemma", help="run the exhaustive residue verification")
    p.set_defaults(func=_cmd_verify_lemma)

    p = sub.add_parser("gen-table", help="build and save the lookup table")
    p.add_argument("--out", required=True, help="output path")
    p.set_defaults(func=_cmd_gen_table)

    p = sub.add_parser("oracle-check", help="cross-check the table against direct enumeration")
    p.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INTERNAL_ERRORS as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 3
    except _INPUT_ERRORS as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
