import cmath
import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqft.errors import CollisionError, ConstructionError, InvalidInputError, PreconditionError
from pqft.pps import (
    check_balance,
    check_orthogonality,
    collision_check,
    collision_free_family,
    combine,
    family_from_json,
    find_collision,
    make_fourier_family,
    make_mseq_family,
)

# One period of each m-sequence, from a hand-run LFSR starting at state 0..01.
BINARY_X3_X_1 = [0, 0, 1, 0, 1, 1, 1]
TERNARY_X2_X_2 = [0, 1, 2, 2, 0, 2, 1, 1]


@pytest.fixture
def f8():
    return make_fourier_family(8, [1, 2, 3])


@pytest.fixture
def m7():
    return make_mseq_family(2, 3, [1, 0, 1, 1], [0, 1, 2])


def test_fourier_definition(f8):
    assert f8.phases(1).tolist() == list(range(8))
    assert f8.denominator == 8
    angles = 2 * np.pi * f8.phases(1) / f8.denominator
    np.testing.assert_allclose(angles, np.arange(8) * np.pi / 4)
    assert f8.phases(3).tolist() == [(3 * k) % 8 for k in range(8)]


@pytest.mark.parametrize(
    "M, ids",
    [(8, [1, 1, 2]), (8, [0, 1]), (1, [1]), (8, [8]), (8, []), (8, [1.5])],
)
def test_fourier_invalid(M, ids):
    with pytest.raises(InvalidInputError):
        make_fourier_family(M, ids)


def test_mseq_binary(m7):
    assert m7.M == 7 and m7.p == 2
    assert list(m7.symbols) == BINARY_X3_X_1
    assert set(m7.phases(1).tolist()) <= {0, 1}
    # shift s reads symbols from offset s
    assert m7.phases(2).tolist() == BINARY_X3_X_1[2:] + BINARY_X3_X_1[:2]


def test_mseq_ternary():
    fam = make_mseq_family(3, 2, [1, 1, 2], [0, 1, 2])
    assert fam.M == 8
    assert list(fam.symbols) == TERNARY_X2_X_2


def test_mseq_symbols_follow_recurrence():
    # s[k+2] = -(s[k+1] + 2 s[k]) mod 3 for x^2 + x + 2
    s = TERNARY_X2_X_2 * 2
    for k in range(8):
        assert s[k + 2] == (-(s[k + 1] + 2 * s[k])) % 3


def test_mseq_non_primitive():
    with pytest.raises(ConstructionError):
        make_mseq_family(2, 3, [1, 0, 0, 1], [0])
    with pytest.raises(ConstructionError):
        make_mseq_family(2, 4, [1, 1, 1, 1, 1], [0])  # period 5


def test_mseq_bad_args():
    with pytest.raises(InvalidInputError):
        make_mseq_family(4, 2, [1, 1, 1], [0])
    with pytest.raises(InvalidInputError):
        make_mseq_family(2, 3, [1, 1, 1], [0])
    with pytest.raises(InvalidInputError):
        make_mseq_family(2, 3, [1, 0, 1, 1], [7])


def test_combine_examples(f8):
    assert combine(f8, (0, 0, 0)).tolist() == [0] * 8
    assert combine(f8, (1, 1, 1)).tolist() == f8.phases(6).tolist()
    f64 = make_fourier_family(64, [1, 4, 16])
    # pointwise addition oracle
    manual = [(2 * (1 * k) + 1 * (4 * k)) % 64 for k in range(64)]
    assert combine(f64, (2, 1, 0)).tolist() == manual == [(6 * k) % 64 for k in range(64)]


def test_combine_length_mismatch(f8):
    with pytest.raises(InvalidInputError):
        combine(f8, (1, 0))
    with pytest.raises(InvalidInputError):
        combine(f8, (1, -1, 0))


def test_orthogonality_examples(f8, m7):
    assert check_orthogonality(f8, 1, 1) == 1
    assert abs(check_orthogonality(f8, 1, 2)) <= 1e-12
    direct = sum(
        cmath.exp(1j * math.pi * (m7.phases(1)[k] - m7.phases(0)[k])) for k in range(7)
    ) / 7
    got = check_orthogonality(m7, 0, 1)
    assert abs(got - direct) < 1e-12
    assert abs(got) <= 1 / 7 + 1e-12


def test_balance_examples(f8, m7):
    assert abs(check_balance(f8, 1, 0.0)) <= 1e-12
    assert abs(check_balance(f8, 1, math.pi / 3)) <= 1e-12
    # four ones and three zeros: 4 * e^{i pi} + 3
    assert abs(check_balance(m7, 0, 0.0) - (-1)) <= 1e-12
    with pytest.raises(PreconditionError):
        check_balance(f8, 0, 0.0)


def test_invalid_ids(f8):
    with pytest.raises(InvalidInputError):
        check_orthogonality(f8, 1, 9)


@pytest.mark.parametrize("M", [2, 7, 8, 64, 255, 256])
def test_fourier_orthogonality_all_pairs(M):
    fam = make_fourier_family(M, [1])
    for a in range(M):
        for b in range(a, min(M, a + 40)):
            assert abs(check_orthogonality(fam, a, b) - (a == b)) <= 1e-12


def test_fourier_balance_random_theta():
    fam = make_fourier_family(64, [1, 4, 16])
    rng = np.random.default_rng(1)
    for j in range(1, 64):
        for theta in rng.uniform(-10, 10, 10):
            assert abs(check_balance(fam, j, theta)) <= 1e-12


@pytest.mark.parametrize("p, deg, poly", [(2, 3, [1, 0, 1, 1]), (3, 2, [1, 1, 2]), (2, 5, [1, 0, 0, 1, 0, 1])])
def test_mseq_balance_modulus_one(p, deg, poly):
    fam = make_mseq_family(p, deg, poly, [0])
    for j in range(fam.M):
        for theta in (0.0, 1.1, -2.5):
            assert abs(abs(check_balance(fam, j, theta)) - 1) <= 1e-9


def _brute_distinct_sums(M, ids, n):
    sums = {}
    for v in itertools.product(range(n + 1), repeat=len(ids)):
        if sum(v) <= n:
            s = sum(c * i for c, i in zip(v, ids)) % M
            if s in sums:
                return False
            sums[s] = v
    return True


def test_collision_free_m64():
    assert _brute_distinct_sums(64, [1, 4, 16], 3)
    collision_check(make_fourier_family(64, [1, 4, 16]))


def test_collision_detected(f8):
    assert not _brute_distinct_sums(8, [1, 2, 3], 3)
    assert find_collision(f8) is not None
    with pytest.raises(CollisionError):
        collision_check(f8)


def test_mseq_collides():
    fam = make_mseq_family(2, 3, [1, 0, 1, 1], [0, 1, 2])
    with pytest.raises(CollisionError):
        collision_check(fam)


@pytest.mark.parametrize("n", range(1, 6))
def test_collision_free_family_rule(n):
    fam = collision_free_family(n)
    assert fam.M == max((n + 1) ** n, 2)
    assert list(fam.base_ids) == [(n + 1) ** t for t in range(n)]
    assert _brute_distinct_sums(fam.M, list(fam.base_ids), n)
    collision_check(fam)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(0, 3), min_size=3, max_size=3),
    st.lists(st.integers(0, 3), min_size=3, max_size=3),
)
def test_closure(u, v):
    fam = make_fourier_family(64, [1, 4, 16])
    lhs = (combine(fam, u) + combine(fam, v)) % fam.denominator
    rhs = combine(fam, [a + b for a, b in zip(u, v)])
    assert lhs.tolist() == rhs.tolist()


def test_exactness_and_immutability(m7):
    a = combine(m7, (1, 2, 0))
    b = combine(m7, (1, 2, 0))
    assert a.dtype.kind == "i" and np.array_equal(a, b)
    assert m7.phase_table == m7.phase_table
    with pytest.raises(ValueError):
        m7.phases(0)[0] = 1


def test_json_round_trip(m7):
    f64 = make_fourier_family(64, [1, 4, 16])
    for fam in (f64, m7):
        data = json.loads(json.dumps(fam.to_json()))
        assert {"kind", "M", "p", "base_ids", "denominator", "phases"} <= set(data)
        back = family_from_json(data)
        assert back.phase_table == fam.phase_table
    bad = f64.to_json()
    bad["phases"]["1"][3] += 1
    with pytest.raises(InvalidInputError):
        family_from_json(bad)
