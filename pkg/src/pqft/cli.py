"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from pqft.ensemble import reduce, tensor_product
from pqft.errors import PQFTError
from pqft.field import (
    FieldState,
    apply_gate,
    prepare_ghz_fields,
    prepare_product_fields,
    prepare_uniform,
    prepare_w_fields,
    random_gate,
    random_gate_fields,
)
from pqft.oracle import compare, qft_oracle
from pqft.pps import (
    FOURIER,
    SequenceFamily,
    check_balance,
    check_orthogonality,
    collision_free_family,
    family_from_json,
    make_fourier_family,
    make_mseq_family,
)
from pqft.qft import MAX_N, gate_count, reduced_transform, transform

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
KINDS = ("product", "ghz", "w", "custom")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _poly(text: str) -> list[int]:
    if "," in text:
        return _int_list(text)
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"bad polynomial {text!r}")
    return [int(c) for c in text]


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write_json(path: str | None, data) -> None:
    if path is None:
        return
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


# -- state files ---------------------------------------------------------------


def state_to_json(fields, family: SequenceFamily, kind: str, seed: int | None) -> dict:
    return {
        "n": len(fields),
        "family": family.descriptor(),
        "fields": [f.to_json() for f in fields],
        "metadata": {"kind": kind, "seed": seed},
    }


def load_state(path: str) -> tuple[list[FieldState], SequenceFamily, dict]:
    data = _read_json(path)
    try:
        n = int(data["n"])
        family = family_from_json(data["family"])
        fields = [FieldState.from_json(n, f) for f in data["fields"]]
        meta = dict(data.get("metadata") or {})
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise UsageError(f"malformed state file {path}: {exc!r}") from exc
    if len(fields) != n or family.n != n:
        raise UsageError(f"state file {path}: n={n} but {len(fields)} fields / {family.n} base ids")
    return fields, family, meta


def _parse_gate(g) -> np.ndarray:
    try:
        m = np.array([[complex(*entry) for entry in row] for row in g])
    except TypeError as exc:
        raise UsageError(f"gate entries must be [re, im] pairs: {exc}") from exc
    if m.shape != (2, 2):
        raise UsageError(f"gate must be 2x2, got {m.shape}")
    return m


# -- subcommands ---------------------------------------------------------------


def cmd_sequences(args) -> int:
    if args.family == FOURIER:
        if args.M is None:
            raise UsageError("--M is required for the fourier family")
        fam = make_fourier_family(args.M, args.ids)
    else:
        if args.p is None or args.degree is None or args.poly is None:
            raise UsageError("--p, --degree and --poly are required for the mseq family")
        fam = make_mseq_family(args.p, args.degree, args.poly, args.ids)
    rng = np.random.default_rng(0)
    thetas = np.concatenate([[0.0], rng.uniform(0, 2 * np.pi, 10)])
    balance = max(abs(check_balance(fam, j, t)) / fam.M for j in fam.base_ids for t in thetas)
    ortho = max(
        abs(check_orthogonality(fam, a, b) - (a == b)) for a in fam.base_ids for b in fam.base_ids
    )
    _write_json(args.out, fam.to_json())
    print(f"family {fam.kind} M={fam.M} p={fam.p} ids={list(fam.base_ids)}")
    print(f"balance max residual {balance:.1e}")
    print(f"orthogonality max residual {ortho:.1e}")
    return EXIT_OK


def cmd_prepare(args) -> int:
    n, kind = args.n, args.kind
    if n < 1 or n > MAX_N:
        raise UsageError(f"--n must be in 1..{MAX_N}")
    seed = args.seed
    if kind == "product":
        fields = prepare_product_fields(n)
    elif kind in ("ghz", "w"):
        if n != 3:
            raise UsageError(f"--kind {kind} is a 3-field fixture; got --n {n}")
        fields = prepare_ghz_fields(3) if kind == "ghz" else prepare_w_fields(3)
    else:
        if args.gates is not None:
            gates = [_parse_gate(g) for g in _read_json(args.gates)]
            if len(gates) != n:
                raise UsageError(f"--gates lists {len(gates)} gates for {n} fields")
        else:
            seed = 0 if seed is None else seed
            rng = np.random.default_rng(seed)
            gates = [random_gate(rng) for _ in range(n)]
        fields = [apply_gate(prepare_uniform(n, i + 1), g) for i, g in enumerate(gates)]
    if args.family is not None:
        family = family_from_json(_read_json(args.family))
        if family.n != n:
            raise UsageError(f"family has {family.n} base ids, --n is {n}")
    else:
        family = collision_free_family(n)
    _write_json(args.out, state_to_json(fields, family, kind, seed))
    print(f"prepared {kind} state with {n} fields -> {args.out}")
    return EXIT_OK


def cmd_transform(args) -> int:
    fields, family, _ = load_state(args.state)
    report = transform(fields, args.engine, family if args.engine == "sampled" else None)
    _write_json(args.out, report.to_json())
    pc = report.gate_counts_per_coefficient
    print(f"engine {report.engine} n={report.n}")
    print("D = " + " ".join(f"{d.real:+.6f}{d.imag:+.6f}j" for d in report.D))
    print(
        f"gates per coefficient: cphase={pc.controlled_phase} h={pc.hadamard} "
        f"select={pc.mode_select} corr={pc.correlation}; total {report.gate_counts.total}"
    )
    print(f"oracle residual {report.oracle_residual:.3e}")
    if args.engine == "sampled":
        sym = transform(fields, "symbolic", verify=False)
        res, _ = compare(report.D, sym.D)
        print(f"sampled vs symbolic residual {res:.3e}")
    return EXIT_OK


def _verify_one(fields) -> tuple[float, int, np.ndarray, np.ndarray]:
    got = reduced_transform(fields).amps
    want = qft_oracle(reduce(tensor_product(fields)).amps)
    res, idx = compare(got, want)
    return res, idx, got, want


def cmd_verify(args) -> int:
    cases = []
    if args.state is not None:
        fields, _, _ = load_state(args.state)
        cases.append((args.state, fields))
    if args.random:
        if args.n < 1 or args.n > MAX_N:
            raise UsageError(f"--n must be in 1..{MAX_N}")
        rng = np.random.default_rng(args.seed)
        for r in range(args.random):
            cases.append((f"random#{r}", random_gate_fields(args.n, rng)))
    if not cases:
        raise UsageError("nothing to verify: pass --state and/or --random N")
    worst = (-1.0, None, -1, 0j, 0j)
    for label, fields in cases:
        res, idx, got, want = _verify_one(fields)
        if res > worst[0]:
            worst = (res, label, idx, got[idx], want[idx])
    res, label, idx, got, want = worst
    print(f"checked {len(cases)} state(s); max residual {res:.3e} (tol {args.tol:g})")
    if res > args.tol:
        print(f"FAIL at {label} index {idx}: analogy {got:.6g} vs oracle {want:.6g}")
        return EXIT_FAIL
    print("OK")
    return EXIT_OK


BENCH_COLUMNS = [
    "n",
    "per_coeff_cphase",
    "per_coeff_h",
    "per_coeff_select",
    "per_coeff_corr",
    "per_coeff_total",
    "full_total",
    "fft_reference",
    "symbolic_seconds",
]


def bench_rows(n_max: int, time_max_n: int = 10) -> list[dict]:
    rows = []
    for n in range(1, n_max + 1):
        per = gate_count(n)
        row = {
            "n": n,
            "per_coeff_cphase": per.controlled_phase,
            "per_coeff_h": per.hadamard,
            "per_coeff_select": per.mode_select,
            "per_coeff_corr": per.correlation,
            "per_coeff_total": per.total,
            "full_total": gate_count(n, full=True).total,
            "fft_reference": n * (1 << n),
            "symbolic_seconds": "",
        }
        if n <= time_max_n:
            fields = prepare_product_fields(n)
            t0 = time.perf_counter()
            report = transform(fields, "symbolic", verify=False)
            row["symbolic_seconds"] = f"{time.perf_counter() - t0:.6f}"
            if report.gate_counts != gate_count(n, full=True):
                raise RuntimeError(f"instrumented counts disagree with gate_count at n={n}")
        rows.append(row)
    return rows


def cmd_bench(args) -> int:
    if not 1 <= args.n_max <= MAX_N:
        raise UsageError(f"--n-max must be in 1..{MAX_N}")
    rows = bench_rows(args.n_max, args.time_max_n)
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pqft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sequences", help="build a phase-sequence family")
    p.add_argument("--family", choices=["fourier", "mseq"], required=True)
    p.add_argument("--M", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--poly", type=_poly, help="coefficients, highest degree first (e.g. 1011)")
    p.add_argument("--ids", type=_int_list, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sequences)

    p = sub.add_parser("prepare", help="write a state file")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", help="family JSON (default: collision-free fourier family)")
    p.add_argument("--gates", help="custom: JSON list of n 2x2 gates with [re, im] entries")
    p.add_argument("--seed", type=int, help="custom: seed for random gates when --gates is absent")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("transform", help="run the transform on a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--engine", choices=["symbolic", "sampled"], default="symbolic")
    p.add_argument("--out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="compare against the dense DFT")
    p.add_argument("--state")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--random", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=3, help="field count for --random states")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="operation-count table as CSV")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--csv")
    p.add_argument("--time-max-n", type=int, default=10)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PQFTError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
