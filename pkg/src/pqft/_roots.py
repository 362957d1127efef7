from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def unit_roots(den: int) -> np.ndarray:
    """Table ``t[r] = exp(2*pi*i*r/den)`` for ``r`` in ``range(den)``.

    When ``den`` is divisible by 4 only the first quadrant is evaluated with
    cos/sin; the rest is obtained by exact multiplication with ``i``, so
    identities like ``t[r + den//2] == -t[r]`` hold bit for bit.
    """
    if den < 1:
        raise ValueError("denominator must be positive")
    if den % 4:
        table = np.exp(2j * np.pi * np.arange(den) / den)
        table[0] = 1.0
        if den % 2 == 0:
            table[den // 2] = -1.0
    else:
        q = den // 4
        first = np.exp(2j * np.pi * np.arange(q) / den)
        first[0] = 1.0
        quads = [first]
        for _ in range(3):
            prev = quads[-1]
            quads.append(-prev.imag + 1j * prev.real)
        table = np.concatenate(quads)
    table.flags.writeable = False
    return table
