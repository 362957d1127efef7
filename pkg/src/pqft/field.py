"""Two-mode classical fields with sequence-polynomial amplitudes.

An amplitude is a finite sum ``sum c * w**m * exp(i * Lambda(v))`` where ``v``
is a multiplicity vector over the ``n`` base sequences (``Lambda(v)`` is the
combined phase sequence) and ``w = exp(2*pi*i / 2**n)``. Powers of ``w`` are
tracked as integer exponents so controlled-phase products stay exact; they
are folded into the complex coefficient only when a value is requested.

All amplitudes are unnormalized: the Hadamard gate is ``(a+b, a-b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from pqft._roots import unit_roots
from pqft.errors import InvalidInputError
from pqft.pps import SequenceFamily, collision_check, combine, phase_values

PRUNE_TOL = 1e-12

Mult = tuple[int, ...]
Key = tuple[Mult, int]


class SequencePolynomial:
    """Immutable sparse polynomial over phase-sequence monomials.

    Terms are keyed by ``(multiplicity vector, omega exponent)``. The omega
    exponent is kept in ``[0, 2**(n-1))``; ``w**(m + 2**(n-1)) = -w**m`` is
    absorbed into the sign of the coefficient, so e.g. ``1 + w**4`` cancels
    exactly at ``n = 3``.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping | Iterable = ()):
        if n < 1:
            raise InvalidInputError("field count n must be positive")
        self.n = int(n)
        acc: dict[Key, complex] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            if len(key) == 2 and isinstance(key[0], tuple):
                v, m = key
            else:
                v, m = key, 0
            v = self._check_mult(v)
            self._accumulate(acc, v, int(m), complex(c))
        self._terms = _pruned(acc)

    @classmethod
    def _wrap(cls, n: int, terms: dict[Key, complex]) -> SequencePolynomial:
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = _pruned(terms)
        return obj

    @classmethod
    def zero(cls, n: int) -> SequencePolynomial:
        return cls._wrap(n, {})

    @classmethod
    def monomial(cls, n: int, index: int, coeff: complex = 1.0) -> SequencePolynomial:
        """``coeff * exp(i*lambda(index))`` with a 1-based base-sequence index."""
        if not 1 <= index <= n:
            raise InvalidInputError(f"sequence index {index} outside 1..{n}")
        v = tuple(1 if t == index - 1 else 0 for t in range(n))
        return cls._wrap(n, {(v, 0): complex(coeff)})

    def _check_mult(self, v) -> Mult:
        v = tuple(int(x) for x in v)
        if len(v) != self.n:
            raise InvalidInputError(f"multiplicity vector {v} does not have length {self.n}")
        if any(x < 0 for x in v):
            raise InvalidInputError(f"negative multiplicity in {v}")
        return v

    @property
    def half_turn(self) -> int:
        return 1 << (self.n - 1)

    def _accumulate(self, acc: dict, v: Mult, m: int, c: complex) -> None:
        h = self.half_turn
        m %= 2 * h
        if m >= h:
            m -= h
            c = -c
        key = (v, m)
        acc[key] = acc.get(key, 0j) + c

    # -- views -------------------------------------------------------------

    def raw_terms(self) -> dict[Key, complex]:
        return dict(self._terms)

    @property
    def terms(self) -> dict[Mult, complex]:
        """Map multiplicity vector -> complex coefficient (omega powers evaluated)."""
        roots = unit_roots(1 << self.n)
        out: dict[Mult, complex] = {}
        for (v, m), c in self._terms.items():
            out[v] = out.get(v, 0j) + c * roots[m]
        return {v: c for v, c in out.items() if abs(c) > PRUNE_TOL}

    def coefficient(self, v: Sequence[int]) -> complex:
        v = self._check_mult(v)
        roots = unit_roots(1 << self.n)
        total = 0j
        for (u, m), c in self._terms.items():
            if u == v:
                total += c * roots[m]
        return complex(total)

    def degrees(self) -> set[int]:
        return {sum(v) for v, _ in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def __iter__(self) -> Iterator[tuple[Key, complex]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        parts = []
        for (v, m), c in sorted(self._terms.items()):
            w = f"*w^{m}" if m else ""
            parts.append(f"({c:.6g}){w}*e{list(v)}")
        return f"SequencePolynomial(n={self.n}: {' + '.join(parts) or '0'})"

    # -- arithmetic ------------------------------------------------------------

    def _same_n(self, other: SequencePolynomial) -> None:
        if other.n != self.n:
            raise InvalidInputError(f"polynomials over {self.n} and {other.n} fields")

    def __add__(self, other: SequencePolynomial) -> SequencePolynomial:
        if not isinstance(other, SequencePolynomial):
            return NotImplemented
        self._same_n(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0j) + c
        return self._wrap(self.n, acc)

    def __neg__(self) -> SequencePolynomial:
        return self._wrap(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: SequencePolynomial) -> SequencePolynomial:
        if not isinstance(other, SequencePolynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, s: complex) -> SequencePolynomial:
        s = complex(s)
        return self._wrap(self.n, {k: c * s for k, c in self._terms.items()})

    def times_omega(self, m: int) -> SequencePolynomial:
        acc: dict[Key, complex] = {}
        for (v, k), c in self._terms.items():
            self._accumulate(acc, v, k + m, c)
        return self._wrap(self.n, acc)

    def __mul__(self, other):
        if isinstance(other, SequencePolynomial):
            self._same_n(other)
            acc: dict[Key, complex] = {}
            for (u, a), cu in self._terms.items():
                for (v, b), cv in other._terms.items():
                    w = tuple(x + y for x, y in zip(u, v))
                    self._accumulate(acc, w, a + b, cu * cv)
            return self._wrap(self.n, acc)
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SequencePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def allclose(self, other: SequencePolynomial, tol: float = PRUNE_TOL) -> bool:
        """Coefficient-wise comparison with omega powers evaluated."""
        self._same_n(other)
        a, b = self.terms, other.terms
        return all(abs(a.get(v, 0j) - b.get(v, 0j)) <= tol for v in a.keys() | b.keys())

    # -- sampling and serialization --------------------------------------------

    def sample(self, family: SequenceFamily) -> np.ndarray:
        """Length-M complex waveform of this amplitude over ``family``."""
        if family.n != self.n:
            raise InvalidInputError(
                f"family has {family.n} base sequences, polynomial uses {self.n}"
            )
        roots = unit_roots(1 << self.n)
        out = np.zeros(family.M, dtype=complex)
        for (v, m), c in self._terms.items():
            out += (c * roots[m]) * phase_values(family, combine(family, v))
        return out

    def to_json(self) -> list[dict]:
        out = []
        for (v, m), c in sorted(self._terms.items()):
            item = {"mult": list(v), "coeff": [c.real, c.imag]}
            if m:
                item["omega"] = m
            out.append(item)
        return out

    @classmethod
    def from_json(cls, n: int, data: list) -> SequencePolynomial:
        if not isinstance(data, list):
            raise InvalidInputError("amplitude must be a list of terms")
        terms = []
        for item in data:
            try:
                re, im = item["coeff"]
                terms.append(((tuple(item["mult"]), int(item.get("omega", 0))), complex(re, im)))
            except (KeyError, TypeError, ValueError) as exc:
                raise InvalidInputError(f"malformed term {item!r}") from exc
        for (v, _), c in terms:
            if not np.isfinite(c.real) or not np.isfinite(c.imag):
                raise InvalidInputError(f"non-finite coefficient at {v}")
        return cls(n, terms)


def _pruned(terms: dict[Key, complex]) -> dict[Key, complex]:
    return {k: c for k, c in terms.items() if abs(c) > PRUNE_TOL}


@dataclass(frozen=True)
class OmegaPower:
    """``w**exponent`` with ``w = exp(2*pi*i / 2**n)``; exponent kept mod ``2**n``."""

    exponent: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("n must be positive")
        object.__setattr__(self, "exponent", int(self.exponent) % (1 << self.n))

    @property
    def value(self) -> complex:
        return complex(unit_roots(1 << self.n)[self.exponent])

    def __mul__(self, other: OmegaPower) -> OmegaPower:
        if not isinstance(other, OmegaPower):
            return NotImplemented
        if other.n != self.n:
            raise InvalidInputError("omega powers for different n")
        return OmegaPower(self.exponent + other.exponent, self.n)


@dataclass(frozen=True)
class FieldState:
    alpha: SequencePolynomial
    beta: SequencePolynomial

    def __post_init__(self):
        if self.alpha.n != self.beta.n:
            raise InvalidInputError("alpha and beta use different field counts")
        if self.alpha.is_zero() and self.beta.is_zero():
            raise InvalidInputError("a field needs at least one nonzero mode amplitude")

    @property
    def n(self) -> int:
        return self.alpha.n

    def scale(self, s: complex) -> FieldState:
        return FieldState(self.alpha.scale(s), self.beta.scale(s))

    def allclose(self, other: FieldState, tol: float = PRUNE_TOL) -> bool:
        return self.alpha.allclose(other.alpha, tol) and self.beta.allclose(other.beta, tol)

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json()}

    @classmethod
    def from_json(cls, n: int, data: dict) -> FieldState:
        try:
            return cls(
                SequencePolynomial.from_json(n, data["alpha"]),
                SequencePolynomial.from_json(n, data["beta"]),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed field {data!r}") from exc


# -- preparation -------------------------------------------------------------


def prepare_uniform(n: int, field_index: int) -> FieldState:
    """``exp(i*lambda(field_index)) * (|0> + |1>)``, 1-based index."""
    if not 1 <= field_index <= n:
        raise InvalidInputError(f"field index {field_index} outside 1..{n}")
    e = SequencePolynomial.monomial(n, field_index)
    return FieldState(e, e)


def prepare_product_fields(n: int) -> list[FieldState]:
    return [prepare_uniform(n, i) for i in range(1, n + 1)]


def prepare_ghz_fields(n: int = 3) -> list[FieldState]:
    """Field k carries ``lambda(k)`` on |0> and ``lambda(k+1)`` (cyclically) on |1>.

    Only the all-0 and all-1 products contain every sequence exactly once, so
    the reduced state is ``|0...0> + |1...1>``.
    """
    if n < 2:
        raise InvalidInputError("GHZ fields need n >= 2")
    return [
        FieldState(
            SequencePolynomial.monomial(n, k),
            SequencePolynomial.monomial(n, k % n + 1),
        )
        for k in range(1, n + 1)
    ]


def prepare_w_fields(n: int = 3) -> list[FieldState]:
    """Every field is ``lambda(1)|1> + (lambda(2)+...+lambda(n))|0>``.

    Reduces to ``(n-1)! * (sum of weight-one basis states)``.
    """
    if n < 2:
        raise InvalidInputError("W fields need n >= 2")
    alpha = SequencePolynomial.zero(n)
    for i in range(2, n + 1):
        alpha = alpha + SequencePolynomial.monomial(n, i)
    beta = SequencePolynomial.monomial(n, 1)
    return [FieldState(alpha, beta) for _ in range(n)]


def random_gate(rng: np.random.Generator) -> np.ndarray:
    """2x2 complex matrix with real and imaginary parts uniform in [-1, 1]."""
    return rng.uniform(-1, 1, (2, 2)) + 1j * rng.uniform(-1, 1, (2, 2))


def random_gate_fields(n: int, rng: np.random.Generator) -> list[FieldState]:
    """Uniform fields each hit by an independent random 2x2 gate."""
    return [apply_gate(prepare_uniform(n, i), random_gate(rng)) for i in range(1, n + 1)]


def random_mixed_fields(n: int, rng: np.random.Generator) -> list[FieldState]:
    """Fields whose modes are random linear combinations of all ``n`` sequences.

    This is the general gate-array form, where each mode amplitude of field k
    is ``sum_i c_i * exp(i*lambda(i))``.
    """
    fields = []
    for _ in range(n):
        modes = []
        for _ in range(2):
            c = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
            poly = SequencePolynomial.zero(n)
            for i in range(n):
                poly = poly + SequencePolynomial.monomial(n, i + 1, c[i])
            modes.append(poly)
        fields.append(FieldState(*modes))
    return fields


# -- gates ---------------------------------------------------------------------


def apply_gate(field: FieldState, matrix) -> FieldState:
    g = np.asarray(matrix, dtype=complex)
    if g.shape != (2, 2):
        raise InvalidInputError(f"gate must be 2x2, got shape {g.shape}")
    if not np.isfinite(g).all():
        raise InvalidInputError("gate has non-finite entries")
    a, b = field.alpha, field.beta
    return FieldState(a.scale(g[0, 0]) + b.scale(g[0, 1]), a.scale(g[1, 0]) + b.scale(g[1, 1]))


def hadamard(field: FieldState) -> FieldState:
    return FieldState(field.alpha + field.beta, field.alpha - field.beta)


def phase_exponent(k: int, j_bits: Sequence[int], n: int) -> int:
    """Controlled-phase exponent for field ``k`` (1-based) given selection bits.

    ``sum_{t<k} j_t * 2**(n-1-k+t)`` mod ``2**n``; field 1 always gets 0.
    """
    if not 1 <= k <= n:
        raise InvalidInputError(f"field index {k} outside 1..{n}")
    bits = _check_bits(j_bits, n)
    e = 0
    for t in range(1, k):
        e += bits[t - 1] << (n - 1 - k + t)
    return e % (1 << n)


def _check_bits(j_bits: Sequence[int], n: int) -> tuple[int, ...]:
    bits = tuple(int(b) for b in j_bits)
    if len(bits) != n:
        raise InvalidInputError(f"selection has {len(bits)} bits, expected {n}")
    if any(b not in (0, 1) for b in bits):
        raise InvalidInputError(f"selection bits must be 0/1, got {bits}")
    return bits


def controlled_phase(field: FieldState, m: OmegaPower | int) -> FieldState:
    exponent = m.exponent if isinstance(m, OmegaPower) else int(m)
    if isinstance(m, OmegaPower) and m.n != field.n:
        raise InvalidInputError("omega power defined for a different n")
    return FieldState(field.alpha, field.beta.times_omega(exponent))


def mode_select(field: FieldState, bit: int) -> SequencePolynomial:
    if bit == 0:
        return field.alpha
    if bit == 1:
        return field.beta
    raise InvalidInputError(f"mode must be 0 or 1, got {bit!r}")


def evaluate_sampled(field: FieldState, family: SequenceFamily) -> np.ndarray:
    """(M, 2) array: column 0 is the |0> waveform, column 1 the |1> waveform.

    Refuses families in which two monomials of the field's degree (or lower)
    share a phase sequence, since the waveform would then merge them.
    """
    if family.n != field.n:
        raise InvalidInputError(f"family has {family.n} base ids, field expects {field.n}")
    degree = max(field.alpha.degrees() | field.beta.degrees() | {1})
    collision_check(family, degree)
    return np.stack([field.alpha.sample(family), field.beta.sample(family)], axis=1)
