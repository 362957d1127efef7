"""Dense, unnormalized DFT used as ground truth.

Deliberately simple: exponents ``j*k mod 2**n`` are computed in integers and
looked up in a table of roots of unity. Nothing here shares code with the
field-based transform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pqft.errors import InvalidInputError

MAX_N = 16


def _roots(N: int) -> np.ndarray:
    r = np.arange(N)
    return np.cos(2 * np.pi * r / N) + 1j * np.sin(2 * np.pi * r / N)


def dft_matrix(n: int) -> np.ndarray:
    """``F[j, k] = w**(j*k)`` with ``w = exp(2*pi*i / 2**n)``."""
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_N:
        raise InvalidInputError(f"n must be in 1..{MAX_N}, got {n!r}")
    N = 1 << n
    idx = np.arange(N, dtype=np.int64)
    return _roots(N)[np.outer(idx, idx) % N]


def qft_oracle(C) -> np.ndarray:
    """``D[k] = sum_j w**(j*k) * C[j]``."""
    c = np.asarray(C, dtype=complex)
    N = c.shape[0] if c.ndim == 1 else 0
    if N < 2 or N & (N - 1):
        raise InvalidInputError(f"input length must be a power of two >= 2, got {c.shape}")
    if N > 1 << MAX_N:
        raise InvalidInputError(f"input longer than 2**{MAX_N}")
    roots = _roots(N)
    idx = np.arange(N, dtype=np.int64)
    out = np.empty(N, dtype=complex)
    step = max(1, (1 << 22) // N)
    for start in range(0, N, step):
        rows = idx[start : start + step]
        out[start : start + step] = roots[np.outer(rows, idx) % N] @ c
    return out


def compare(a, b) -> tuple[float, int]:
    """Max absolute entry-wise difference and the index where it occurs."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise InvalidInputError(f"length mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0, -1
    diff = np.abs(a - b)
    i = int(np.argmax(diff))
    return float(diff[i]), i


# Transcription of the published 8x8 transform matrix, row by row.
# Entries are "[-]w<p>" meaning (+/-) w**p; "1" and "-1" are w**0 and -w**0.
PUBLISHED_ROWS = [
    "1 1 1 1 1 1 1 1",
    "1 w w2 w3 -1 -w -w2 -w3",
    "1 w2 -1 -w2 1 w2 -1 w2",
    "1 w3 -w2 w -1 -w3 w2 -w",
    "1 -1 1 -1 1 -1 1 -1",
    "1 -w w2 -w3 -1 w -w2 w3",
    "1 -w2 -1 w2 1 -w2 -1 w2",
    "1 -w3 -w2 -w -1 w3 w2 w",
]


def _parse_entry(tok: str) -> complex:
    sign = -1 if tok.startswith("-") else 1
    body = tok.lstrip("-")
    if body == "1":
        p = 0
    elif body.startswith("w"):
        p = int(body[1:] or 1)
    else:
        raise ValueError(f"bad matrix token {tok!r}")
    return sign * _roots(8)[p % 8]


def published_matrix() -> np.ndarray:
    rows = [[_parse_entry(t) for t in row.split()] for row in PUBLISHED_ROWS]
    return np.array(rows, dtype=complex)


@dataclass(frozen=True)
class Mismatch:
    row: int
    col: int
    published_value: complex
    oracle_value: complex


def check_published_matrix(tolerance: float = 1e-12) -> list[Mismatch]:
    """Entries of the published 3-field matrix that disagree with ``dft_matrix(3)``."""
    published = published_matrix()
    oracle = dft_matrix(3)
    out = []
    for r, c in zip(*np.nonzero(np.abs(published - oracle) > tolerance)):
        out.append(Mismatch(int(r), int(c), complex(published[r, c]), complex(oracle[r, c])))
    return out
