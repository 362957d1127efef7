"""Per-coefficient transform on modulated fields.

For a selected output basis state ``(j_1, ..., j_n)`` every field ``k`` gets a
controlled phase ``w**e_k`` on its |1> mode, a Hadamard, and a projection onto
mode ``j_k``. The product of the selected amplitudes, after reduction, is the
transform coefficient at index ``j_1 + 2*j_2 + ... + 2**(n-1)*j_n`` (the
selection bits come out bit-reversed).

The full transform loops over all ``2**n`` selections, so its total work is
``2**n`` times the per-coefficient gate count.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from pqft.ensemble import (
    ReducedState,
    _check_fields,
    correlation_matrix,
    reduce,
    reduce_sampled,
    reference_mult,
    tensor_product,
)
from pqft.errors import InvalidInputError
from pqft.field import (
    FieldState,
    SequencePolynomial,
    controlled_phase,
    hadamard,
    mode_select,
    phase_exponent,
)
from pqft.oracle import compare, qft_oracle
from pqft.pps import SequenceFamily, collision_check, collision_free_family

MAX_N = 16
ENGINES = ("symbolic", "sampled")


@dataclass(frozen=True)
class GateCounts:
    controlled_phase: int = 0
    hadamard: int = 0
    mode_select: int = 0
    correlation: int = 0

    @property
    def total(self) -> int:
        return self.controlled_phase + self.hadamard + self.mode_select + self.correlation

    def __add__(self, other: GateCounts) -> GateCounts:
        return GateCounts(
            self.controlled_phase + other.controlled_phase,
            self.hadamard + other.hadamard,
            self.mode_select + other.mode_select,
            self.correlation + other.correlation,
        )

    def __mul__(self, k: int) -> GateCounts:
        return GateCounts(
            self.controlled_phase * k, self.hadamard * k, self.mode_select * k, self.correlation * k
        )

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.controlled_phase, self.hadamard, self.mode_select, self.correlation)

    def to_json(self) -> dict:
        return {
            "controlled_phase": self.controlled_phase,
            "hadamard": self.hadamard,
            "mode_select": self.mode_select,
            "correlation": self.correlation,
        }


def gate_count(n: int, full: bool = False) -> GateCounts:
    """Operation counts for one coefficient, or for all ``2**n`` if ``full``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    per = GateCounts(n, n, n, n * n)
    return per * (1 << n) if full else per


def output_index(j_bits: Sequence[int]) -> int:
    """Index of the coefficient produced by selection ``j_bits`` (bit reversal)."""
    return sum(int(b) << t for t, b in enumerate(j_bits))


def selections(n: int):
    return itertools.product((0, 1), repeat=n)


def _selected_amplitudes(
    fields: Sequence[FieldState], j_bits: Sequence[int], tally: Counter
) -> list[SequencePolynomial]:
    n = len(fields)
    out = []
    for k, f in enumerate(fields, 1):
        f = controlled_phase(f, phase_exponent(k, j_bits, n))
        tally["controlled_phase"] += 1
        f = hadamard(f)
        tally["hadamard"] += 1
        out.append(mode_select(f, int(j_bits[k - 1])))
        tally["mode_select"] += 1
    return out


def extract_coefficient(
    fields: Sequence[FieldState], j_bits: Sequence[int], tally: Counter | None = None
) -> SequencePolynomial:
    """Unreduced coefficient for one selection: product of the selected amplitudes."""
    n = _check_fields(fields)
    if len(j_bits) != n:
        raise InvalidInputError(f"selection has {len(j_bits)} bits for {n} fields")
    tally = Counter() if tally is None else tally
    amps = _selected_amplitudes(fields, j_bits, tally)
    prod = amps[0]
    for a in amps[1:]:
        prod = prod * a
    # detection correlates every pair of detected fields
    tally["correlation"] += n * n
    return prod


def _sampled_coefficient(
    fields: Sequence[FieldState], j_bits: Sequence[int], family: SequenceFamily, tally: Counter
) -> complex:
    amps = _selected_amplitudes(fields, j_bits, tally)
    signals = [a.sample(family) for a in amps]
    tally["correlation"] += correlation_matrix(signals).size
    return reduce_sampled(signals, family)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PQFT_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class TransformReport:
    n: int
    engine: str
    D: np.ndarray
    gate_counts: GateCounts
    gate_counts_per_coefficient: GateCounts
    D_poly: list[SequencePolynomial] | None = field(default=None, repr=False)
    oracle_residual: float | None = None
    oracle_argmax: int | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "engine": self.engine,
            "D": [[d.real, d.imag] for d in self.D.tolist()],
            "gate_counts": self.gate_counts.to_json(),
            "gate_counts_per_coefficient": self.gate_counts_per_coefficient.to_json(),
            "oracle_residual": self.oracle_residual,
        }


def transform(
    fields: Sequence[FieldState],
    engine: str = "symbolic",
    family: SequenceFamily | None = None,
    *,
    keep_polys: bool = False,
    verify: bool = True,
    threads: int | None = None,
) -> TransformReport:
    """Run the analogy transform over every selection.

    ``engine="symbolic"`` reduces each coefficient polynomial exactly;
    ``engine="sampled"`` evaluates the selected amplitudes as M-slot waveforms
    over ``family`` (default: the collision-free Fourier family for ``n``) and
    demodulates them. With ``verify`` the result is compared against the dense
    DFT of the reduced input state.
    """
    n = _check_fields(fields)
    if n > MAX_N:
        raise InvalidInputError(f"n={n} exceeds the supported maximum {MAX_N}")
    if engine not in ENGINES:
        raise InvalidInputError(f"engine must be one of {ENGINES}, got {engine!r}")
    if engine == "sampled":
        family = collision_free_family(n) if family is None else family
        if family.n != n:
            raise InvalidInputError(f"family has {family.n} base ids for {n} fields")
        collision_check(family)
    ref = reference_mult(n)

    def work(bits):
        tally: Counter = Counter()
        if engine == "symbolic":
            poly = extract_coefficient(fields, bits, tally)
            return output_index(bits), poly.coefficient(ref), poly, tally
        return output_index(bits), _sampled_coefficient(fields, bits, family, tally), None, tally

    workers = _threads() if threads is None else max(1, threads)
    sels = list(selections(n))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, sels))
    else:
        results = [work(b) for b in sels]

    D = np.zeros(1 << n, dtype=complex)
    polys: list[SequencePolynomial | None] = [None] * (1 << n)
    tally: Counter = Counter()
    for k, value, poly, t in results:
        D[k] = value
        polys[k] = poly
        tally.update(t)
    totals = GateCounts(
        tally["controlled_phase"], tally["hadamard"], tally["mode_select"], tally["correlation"]
    )
    report = TransformReport(
        n=n,
        engine=engine,
        D=D,
        gate_counts=totals,
        gate_counts_per_coefficient=GateCounts(*(c >> n for c in totals.as_tuple())),
        D_poly=polys if keep_polys and engine == "symbolic" else None,
    )
    if verify:
        expected = qft_oracle(reduce(tensor_product(fields)).amps)
        report.oracle_residual, report.oracle_argmax = compare(D, expected)
    return report


def reduced_transform(fields: Sequence[FieldState]) -> ReducedState:
    report = transform(fields, "symbolic", verify=False)
    return ReducedState(report.n, report.D)
