"""Formal product states and ensemble-averaged reduction.

Basis indices are big-endian in field order: ``index = i_1 * 2**(n-1) + ... + i_n``.
Reduction keeps, for each basis index, only the coefficient of the reference
sequence ``lambda(1) + ... + lambda(n)`` (multiplicity vector of all ones); the
balance property averages every other monomial to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from pqft.errors import InvalidInputError
from pqft.field import FieldState, SequencePolynomial
from pqft.pps import SequenceFamily, collision_check, combine, phase_values


def reference_mult(n: int) -> tuple[int, ...]:
    return (1,) * n


@dataclass(frozen=True)
class ExpandedState:
    n: int
    coeffs: dict[int, SequencePolynomial]

    def __getitem__(self, index: int) -> SequencePolynomial:
        return self.coeffs.get(index, SequencePolynomial.zero(self.n))


@dataclass(frozen=True)
class ReducedState:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise InvalidInputError(f"reduced state for n={self.n} needs {1 << self.n} amplitudes")
        if not np.isfinite(amps).all():
            raise InvalidInputError("reduced state has non-finite amplitudes")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    def to_json(self) -> dict:
        return {"n": self.n, "amps": [[a.real, a.imag] for a in self.amps.tolist()]}

    @classmethod
    def from_json(cls, data: dict) -> ReducedState:
        try:
            return cls(int(data["n"]), np.array([complex(re, im) for re, im in data["amps"]]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed reduced state: {exc}") from exc


def _check_fields(fields: Sequence[FieldState]) -> int:
    n = len(fields)
    if n < 1:
        raise InvalidInputError("need at least one field")
    for k, f in enumerate(fields, 1):
        if f.n != n:
            raise InvalidInputError(f"field {k} uses {f.n} sequences but there are {n} fields")
    return n


def tensor_product(fields: Sequence[FieldState]) -> ExpandedState:
    n = _check_fields(fields)
    one = SequencePolynomial(n, {(0,) * n: 1.0})
    layer = [one]
    for f in fields:
        layer = [c * amp for c in layer for amp in (f.alpha, f.beta)]
    return ExpandedState(n, {i: c for i, c in enumerate(layer) if not c.is_zero()})


def reduce(state: ExpandedState) -> ReducedState:
    ref = reference_mult(state.n)
    amps = np.zeros(1 << state.n, dtype=complex)
    for i, poly in state.coeffs.items():
        amps[i] = poly.coefficient(ref)
    return ReducedState(state.n, amps)


def demodulate(product: np.ndarray, family: SequenceFamily) -> complex:
    """Average a slot-wise product against ``exp(-i*lambda(S))``."""
    ref = phase_values(family, combine(family, reference_mult(family.n)))
    return complex(np.mean(product * ref.conj()))


def reduce_sampled(signals: Sequence[np.ndarray], family: SequenceFamily) -> complex:
    """Demodulate the slot-wise product of ``n`` selected-mode waveforms."""
    collision_check(family)
    if len(signals) != family.n:
        raise InvalidInputError(f"expected {family.n} signals, got {len(signals)}")
    prod = np.ones(family.M, dtype=complex)
    for s in signals:
        s = np.asarray(s, dtype=complex)
        if s.shape != (family.M,):
            raise InvalidInputError(f"signal must have {family.M} slots, got shape {s.shape}")
        prod = prod * s
    return demodulate(prod, family)


def correlation_matrix(signals: Sequence[np.ndarray]) -> np.ndarray:
    """Pairwise slot-averaged correlations ``<s_a, s_b>`` of the detected waveforms."""
    s = np.asarray(signals, dtype=complex)
    return (s.conj() @ s.T) / s.shape[1]


def inner_product(a: FieldState, b: FieldState, family: SequenceFamily) -> complex:
    sa = np.stack([a.alpha.sample(family), a.beta.sample(family)])
    sb = np.stack([b.alpha.sample(family), b.beta.sample(family)])
    return complex((sa.conj() * sb).sum() / family.M)
