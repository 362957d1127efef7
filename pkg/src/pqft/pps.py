"""Pseudorandom phase sequence (PPS) families.

A family holds M-slot phase sequences whose phases are exact rational
multiples of 2*pi: slot ``k`` of sequence ``id`` has phase
``2*pi * numerator[k] / denominator``. Two constructions are provided:

* ``fourier``: ``lambda(j)_k = 2*pi*j*k/M``. Balance and orthogonality hold
  exactly, and the family is a cyclic group under pointwise addition
  (``lambda(a) + lambda(b) = lambda(a+b mod M)``).
* ``mseq``: cyclic shifts of a maximal-length LFSR sequence over GF(p),
  symbols mapped to phases ``2*pi*s/p``. Balance holds only up to a residual
  of modulus 1 (out of M).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from pqft._roots import unit_roots
from pqft.errors import (
    CollisionError,
    ConstructionError,
    InvalidInputError,
    PreconditionError,
)

FOURIER = "fourier"
MSEQ = "mseq"

MAX_SLOTS = 1 << 20


@dataclass(frozen=True)
class SequenceFamily:
    kind: str
    M: int
    p: int
    base_ids: tuple[int, ...]
    denominator: int
    # mseq only: one period of the generating m-sequence; shift s reads symbols[(k+s) % M]
    symbols: tuple[int, ...] | None = field(default=None, repr=False)
    poly: tuple[int, ...] | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.base_ids)

    def phases(self, seq_id: int) -> np.ndarray:
        """Integer phase numerators of one sequence (read-only, length M)."""
        return self._numerators(self._check_id(seq_id))

    @cached_property
    def phase_table(self) -> dict[int, tuple[int, ...]]:
        return {i: tuple(int(x) for x in self.phases(i)) for i in self.base_ids}

    @cached_property
    def _base_matrix(self) -> np.ndarray:
        return np.array([self.phases(i) for i in self.base_ids], dtype=np.int64).reshape(
            self.n, self.M
        )

    @cached_property
    def _collision(self):
        return find_collision(self)

    def _check_id(self, seq_id) -> int:
        if isinstance(seq_id, (bool, np.bool_)) or not isinstance(seq_id, (int, np.integer)):
            raise InvalidInputError(f"sequence id must be an integer, got {seq_id!r}")
        seq_id = int(seq_id)
        if not 0 <= seq_id < self.M:
            raise InvalidInputError(f"sequence id {seq_id} outside 0..{self.M - 1}")
        return seq_id

    def _numerators(self, seq_id: int) -> np.ndarray:
        k = np.arange(self.M, dtype=np.int64)
        if self.kind == FOURIER:
            out = (seq_id * k) % self.M
        else:
            sym = np.asarray(self.symbols, dtype=np.int64)
            out = sym[(k + seq_id) % self.M]
        out.flags.writeable = False
        return out

    def to_json(self) -> dict:
        d = {
            "kind": self.kind,
            "M": self.M,
            "p": self.p,
            "base_ids": list(self.base_ids),
            "denominator": self.denominator,
            "phases": {str(i): list(v) for i, v in self.phase_table.items()},
        }
        if self.kind == MSEQ:
            d["poly"] = list(self.poly)
        return d

    def descriptor(self) -> dict:
        """Compact form sufficient to rebuild the family."""
        d = {"kind": self.kind, "M": self.M, "p": self.p, "base_ids": list(self.base_ids)}
        if self.kind == MSEQ:
            d["degree"] = len(self.poly) - 1
            d["poly"] = list(self.poly)
        return d


def family_from_json(data: dict) -> SequenceFamily:
    """Rebuild a family from ``to_json``/``descriptor`` output.

    When a phase table is present it must agree with the rebuilt family.
    """
    try:
        kind = data["kind"]
        base_ids = [int(i) for i in data["base_ids"]]
        if kind == FOURIER:
            fam = make_fourier_family(int(data["M"]), base_ids)
        elif kind == MSEQ:
            p = int(data["p"])
            if "poly" in data:
                poly = [int(c) for c in data["poly"]]
            else:
                raise InvalidInputError("mseq family JSON needs 'poly'")
            fam = make_mseq_family(p, len(poly) - 1, poly, base_ids)
            if "M" in data and int(data["M"]) != fam.M:
                raise InvalidInputError("M does not match the polynomial degree")
        else:
            raise InvalidInputError(f"unknown family kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed family JSON: {exc}") from exc
    phases = data.get("phases")
    if phases is not None:
        if {int(k) for k in phases} != set(fam.base_ids):
            raise InvalidInputError("phase table ids differ from base_ids")
        for k, v in phases.items():
            if tuple(int(x) for x in v) != fam.phase_table[int(k)]:
                raise InvalidInputError(f"phase table for id {k} is inconsistent")
    return fam


def _as_id_list(ids: Sequence[int]) -> tuple[int, ...]:
    out = []
    for i in ids:
        if isinstance(i, (bool, np.bool_)) or not isinstance(i, (int, np.integer)):
            raise InvalidInputError(f"ids must be integers, got {i!r}")
        out.append(int(i))
    if not out:
        raise InvalidInputError("need at least one base id")
    if len(set(out)) != len(out):
        raise InvalidInputError(f"duplicate base ids in {out}")
    return tuple(out)


def make_fourier_family(M: int, base_ids: Sequence[int]) -> SequenceFamily:
    if not isinstance(M, (int, np.integer)) or M < 2:
        raise InvalidInputError(f"M must be an integer >= 2, got {M!r}")
    if M > MAX_SLOTS:
        raise InvalidInputError(f"M={M} exceeds the supported {MAX_SLOTS} slots")
    ids = _as_id_list(base_ids)
    for i in ids:
        if i == 0:
            raise InvalidInputError("id 0 is the all-zero sequence and cannot be a base id")
        if not 0 < i < M:
            raise InvalidInputError(f"base id {i} outside 1..{M - 1}")
    return SequenceFamily(kind=FOURIER, M=int(M), p=int(M), base_ids=ids, denominator=int(M))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def lfsr_sequence(p: int, poly: Sequence[int], length: int | None = None) -> tuple[list[int], int]:
    """Run the LFSR for ``poly`` (highest degree first) from state ``0..01``.

    Returns one period of output symbols and the period. The recurrence is
    ``s[k+d] = -sum(c_i * s[k+i]) mod p`` for ``poly = x^d + ... + c_1 x + c_0``.
    """
    d = len(poly) - 1
    taps = [(-c) % p for c in reversed(poly[1:])]  # taps[i] multiplies s[k+i]
    state = [0] * (d - 1) + [1]
    start = tuple(state)
    out: list[int] = []
    limit = p**d if length is None else length
    for _ in range(limit):
        out.append(state[0])
        nxt = sum(t * s for t, s in zip(taps, state)) % p
        state = state[1:] + [nxt]
        if tuple(state) == start:
            return out, len(out)
    return out, 0


def make_mseq_family(
    p: int, degree: int, primitive_poly: Sequence[int], base_ids: Sequence[int]
) -> SequenceFamily:
    """Family of cyclic shifts of the m-sequence generated by ``primitive_poly``.

    ``primitive_poly`` lists coefficients from the highest degree down, e.g.
    ``[1, 0, 1, 1]`` for x^3 + x + 1. Ids are shift amounts in ``0..M-1``.
    """
    if not isinstance(p, (int, np.integer)) or not _is_prime(int(p)):
        raise InvalidInputError(f"p must be prime, got {p!r}")
    if not isinstance(degree, (int, np.integer)) or degree < 1:
        raise InvalidInputError(f"degree must be a positive integer, got {degree!r}")
    poly = tuple(int(c) for c in primitive_poly)
    if len(poly) != degree + 1:
        raise InvalidInputError(f"polynomial of degree {degree} needs {degree + 1} coefficients")
    if any(not 0 <= c < p for c in poly):
        raise InvalidInputError(f"coefficients must lie in GF({p})")
    if poly[0] != 1:
        raise InvalidInputError("polynomial must be monic")
    M = p**degree - 1
    if M > MAX_SLOTS:
        raise InvalidInputError(f"period {M} exceeds the supported {MAX_SLOTS} slots")
    if M < 2:
        raise ConstructionError("degenerate m-sequence (period < 2)")
    symbols, period = lfsr_sequence(p, poly)
    if period != M:
        raise ConstructionError(
            f"polynomial {list(poly)} is not primitive over GF({p}): period {period}, expected {M}"
        )
    ids = _as_id_list(base_ids)
    for i in ids:
        if not 0 <= i < M:
            raise InvalidInputError(f"shift id {i} outside 0..{M - 1}")
    return SequenceFamily(
        kind=MSEQ, M=M, p=int(p), base_ids=ids, denominator=int(p),
        symbols=tuple(symbols), poly=poly,
    )


def collision_free_family(n: int) -> SequenceFamily:
    """Fourier family with ``M = (n+1)**n`` and ids ``(n+1)**t``.

    Base-(n+1) digits of any multiplicity vector of degree <= n never carry,
    so distinct vectors give distinct id sums.
    """
    if n < 1:
        raise InvalidInputError("n must be positive")
    b = n + 1
    return make_fourier_family(max(b**n, 2), [b**t for t in range(n)])


def _check_mult(family: SequenceFamily, v: Sequence[int]) -> np.ndarray:
    arr = np.asarray(v)
    if arr.ndim != 1 or arr.shape[0] != family.n:
        raise InvalidInputError(
            f"multiplicity vector has length {arr.shape[0] if arr.ndim else 0}, family has {family.n} base ids"
        )
    if arr.dtype.kind not in "iu" or (arr < 0).any():
        raise InvalidInputError("multiplicities must be non-negative integers")
    return arr.astype(np.int64)


def combine(family: SequenceFamily, v: Sequence[int]) -> np.ndarray:
    """Phase numerators of ``sum_i v[i] * lambda(base_ids[i])`` (mod denominator)."""
    counts = _check_mult(family, v)
    return (counts @ family._base_matrix) % family.denominator


def phase_values(family: SequenceFamily, numerators: np.ndarray) -> np.ndarray:
    """Evaluate ``exp(2*pi*i*num/den)`` through the exact root table."""
    return unit_roots(family.denominator)[np.asarray(numerators) % family.denominator]


def check_orthogonality(family: SequenceFamily, a: int, b: int) -> complex:
    pa = family.phases(a)
    pb = family.phases(b)
    return complex(phase_values(family, pb - pa).mean())


def check_balance(family: SequenceFamily, j: int, theta: float) -> complex:
    if family.kind == FOURIER and j == 0:
        raise PreconditionError("balance does not hold for the all-zero sequence (id 0)")
    s = phase_values(family, family.phases(j)).sum()
    return complex(np.exp(1j * theta) * s)


def multiplicity_vectors(n: int, max_degree: int) -> Iterator[tuple[int, ...]]:
    """All length-``n`` non-negative vectors with total at most ``max_degree``."""
    for v in itertools.product(range(max_degree + 1), repeat=n):
        if sum(v) <= max_degree:
            yield v


def find_collision(
    family: SequenceFamily, max_degree: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First pair of distinct multiplicity vectors with identical combined phases."""
    deg = family.n if max_degree is None else max_degree
    seen: dict[object, tuple[int, ...]] = {}
    for v in multiplicity_vectors(family.n, deg):
        if family.kind == FOURIER:
            key: object = sum(c * i for c, i in zip(v, family.base_ids)) % family.M
        else:
            key = combine(family, v).tobytes()
        if key in seen:
            return seen[key], v
        seen[key] = v
    return None


def collision_check(family: SequenceFamily, max_degree: int | None = None) -> None:
    """Raise ``CollisionError`` unless every product of degree <= n is distinct."""
    hit = family._collision if max_degree is None else find_collision(family, max_degree)
    if hit is not None:
        u, v = hit
        raise CollisionError(
            f"multiplicity vectors {u} and {v} give the same phase sequence in "
            f"{family.kind} family M={family.M} ids={list(family.base_ids)}"
        )
