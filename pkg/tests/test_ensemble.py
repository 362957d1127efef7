import itertools

import numpy as np
import pytest

from pqft.ensemble import (
    ReducedState,
    correlation_matrix,
    inner_product,
    reduce,
    reduce_sampled,
    tensor_product,
)
from pqft.errors import CollisionError, InvalidInputError
from pqft.field import (
    FieldState,
    SequencePolynomial,
    hadamard,
    prepare_ghz_fields,
    prepare_product_fields,
    prepare_uniform,
    prepare_w_fields,
    random_gate_fields,
    random_mixed_fields,
)
from pqft.pps import collision_free_family, make_fourier_family


def brute_reduce(fields):
    """Enumerate one term per field and keep products hitting each sequence once."""
    n = len(fields)
    out = np.zeros(1 << n, dtype=complex)
    for bits in itertools.product((0, 1), repeat=n):
        index = int("".join(map(str, bits)), 2)
        modes = [(f.alpha if b == 0 else f.beta).terms for f, b in zip(fields, bits)]
        for choice in itertools.product(*(m.items() for m in modes)):
            total = np.sum([v for v, _ in choice], axis=0)
            if np.all(total == 1):
                out[index] += np.prod([c for _, c in choice])
    return out


def test_product_state_expansion():
    state = tensor_product(prepare_product_fields(3))
    for i in range(8):
        assert state[i].terms == {(1, 1, 1): 1}
    assert reduce(state).amps.tolist() == [1] * 8


def test_product_state_expansion_general_n():
    for n in range(1, 6):
        state = tensor_product(prepare_product_fields(n))
        assert all(state[i].terms == {(1,) * n: 1} for i in range(1 << n))


def test_ghz_expansion():
    state = tensor_product(prepare_ghz_fields(3))
    # |001>: lambda1 * lambda2 * lambda1 -> relative phase lambda1 - lambda3
    assert state[0b001].terms == {(2, 1, 0): 1}
    assert state[0b000].terms == {(1, 1, 1): 1} == state[0b111].terms
    assert state[0b100].terms == {(0, 2, 1): 1}
    assert reduce(state).amps.tolist() == [1, 0, 0, 0, 0, 0, 0, 1]


def test_w_reduction():
    state = tensor_product(prepare_w_fields(3))
    assert reduce(state).amps.tolist() == [0, 2, 2, 0, 2, 0, 0, 0]
    # |000> carries only lambda2/lambda3 products, never the reference
    assert state[0].coefficient((1, 1, 1)) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_general_ghz_and_w(n):
    ghz = reduce(tensor_product(prepare_ghz_fields(n))).amps
    want = np.zeros(1 << n)
    want[0] = want[-1] = 1
    assert np.array_equal(ghz, want)
    w = reduce(tensor_product(prepare_w_fields(n))).amps
    fact = np.prod(range(1, n))
    want = np.zeros(1 << n)
    for t in range(n):
        want[1 << t] = fact
    assert np.array_equal(w, want)


def test_single_field():
    a, b = 0.5 - 1j, 2 + 0.25j
    f = FieldState(SequencePolynomial.monomial(1, 1, a), SequencePolynomial.monomial(1, 1, b))
    state = tensor_product([f])
    assert state[0].terms == {(1,): a} and state[1].terms == {(1,): b}
    assert reduce(state).amps.tolist() == [a, b]


def test_tensor_length_mismatch():
    with pytest.raises(InvalidInputError):
        tensor_product([prepare_uniform(3, 1), prepare_uniform(3, 2)])
    with pytest.raises(InvalidInputError):
        tensor_product([])


@pytest.mark.parametrize("seed", range(20))
def test_reduce_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    n = 2 + seed % 3
    fields = random_mixed_fields(n, rng)
    state = tensor_product(fields)
    assert all(state[i].degrees() <= {n} for i in range(1 << n))
    np.testing.assert_allclose(reduce(state).amps, brute_reduce(fields), atol=1e-12)


def test_reduce_linear():
    rng = np.random.default_rng(11)
    f, g = random_mixed_fields(3, rng), random_mixed_fields(3, rng)
    sf, sg = tensor_product(f), tensor_product(g)
    summed = {i: sf[i] + sg[i] for i in range(8)}
    from pqft.ensemble import ExpandedState

    np.testing.assert_allclose(
        reduce(ExpandedState(3, summed)).amps, reduce(sf).amps + reduce(sg).amps, atol=0
    )


def _selected(fields, bits):
    return [hadamard(f).alpha if b == 0 else hadamard(f).beta for f, b in zip(fields, bits)]


def test_reduce_sampled_examples():
    fam = make_fourier_family(64, [1, 4, 16])
    sig = [p.sample(fam) for p in _selected(prepare_product_fields(3), (0, 0, 0))]
    assert abs(reduce_sampled(sig, fam) - 8) < 1e-12
    sig = [p.sample(fam) for p in _selected(prepare_ghz_fields(3), (0, 0, 0))]
    assert abs(reduce_sampled(sig, fam) - 2) < 1e-12
    zero = [np.zeros(64), sig[1], sig[2]]
    assert reduce_sampled(zero, fam) == 0


def test_reduce_sampled_refuses_collisions():
    fam = make_fourier_family(8, [1, 2, 3])
    with pytest.raises(CollisionError):
        reduce_sampled([np.ones(8)] * 3, fam)


@pytest.mark.parametrize("seed", range(10))
def test_sampled_matches_symbolic(seed):
    rng = np.random.default_rng(100 + seed)
    n = 2 + seed % 3
    fam = collision_free_family(n)
    fields = random_mixed_fields(n, rng)
    state = tensor_product(fields)
    for bits in itertools.product((0, 1), repeat=n):
        polys = [f.alpha if b == 0 else f.beta for f, b in zip(fields, bits)]
        got = reduce_sampled([p.sample(fam) for p in polys], fam)
        want = state[int("".join(map(str, bits)), 2)].coefficient((1,) * n)
        assert abs(got - want) <= 1e-8


def test_inner_product():
    fam = make_fourier_family(8, [1, 2, 3])
    u1 = prepare_uniform(3, 1).scale(2**-0.5)
    assert abs(inner_product(u1, u1, fam) - 1) < 1e-12
    assert abs(inner_product(u1, prepare_uniform(3, 2), fam)) < 1e-12
    a = FieldState(SequencePolynomial.monomial(3, 1), SequencePolynomial.zero(3))
    b = FieldState(SequencePolynomial.zero(3), SequencePolynomial.monomial(3, 1))
    assert abs(inner_product(a, b, fam)) < 1e-12


def test_correlation_matrix_shape():
    fam = collision_free_family(3)
    sig = [p.sample(fam) for p in _selected(random_gate_fields(3, np.random.default_rng(0)), (1, 0, 1))]
    c = correlation_matrix(sig)
    assert c.shape == (3, 3)
    np.testing.assert_allclose(c, c.conj().T, atol=1e-12)


def test_reduced_state_json():
    r = ReducedState(2, [1, 0, 1j, -1])
    assert r.to_json() == {"n": 2, "amps": [[1, 0], [0, 0], [0, 1], [-1, 0]]}
    assert np.array_equal(ReducedState.from_json(r.to_json()).amps, r.amps)
    with pytest.raises(InvalidInputError):
        ReducedState(2, [1, 2, 3])
