import functools

import numpy as np
import pytest

from quregroups import spinor as sp
from quregroups import tensor as tg
from quregroups.errors import DomainError
from quregroups.verify.oracles import random_qubits, random_su2

import _oracles

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def test_kron_vec():
    np.testing.assert_array_equal(tg.kron_vec([1, 0], [0, 1]), tg.canonical_ket("01"))
    c = np.array([0.6, 0.8j])
    np.testing.assert_array_equal(tg.kron_vec([1, 0], c), [0.6, 0.8j, 0, 0])
    x, y = random_qubits(np.random.default_rng(0), 2)
    assert np.linalg.norm(tg.kron_vec(x, y)) == pytest.approx(1)
    np.testing.assert_allclose(tg.kron_vec(x, y), np.kron(x, y))


def test_kron_mat(rng):
    np.testing.assert_array_equal(tg.kron_mat(np.eye(2), np.eye(2)), np.eye(4))
    x = sp.pauli(1)
    np.testing.assert_array_equal(tg.kron_mat(x, x) @ tg.canonical_ket("00"), tg.canonical_ket("11"))
    a, b, c, d = random_su2(rng, 4)
    np.testing.assert_allclose(tg.kron_mat(a, b), np.kron(a, b))
    np.testing.assert_allclose(tg.kron_mat(a, b) @ tg.kron_mat(c, d), tg.kron_mat(a @ c, b @ d), atol=1e-14)
    u, v = random_qubits(rng, 2)
    np.testing.assert_allclose(tg.kron_mat(a, b) @ tg.kron_vec(u, v), tg.kron_vec(a @ u, b @ v), atol=1e-14)


def test_kron_mat_batched(rng):
    a, b = random_su2(rng, 5), random_su2(rng, 5)
    batch = tg.kron_mat(a, b)
    for k in range(5):
        np.testing.assert_allclose(batch[k], np.kron(a[k], b[k]))


def test_group_generator(rng):
    np.testing.assert_array_equal(tg.group_generator([np.eye(2)] * 3), np.eye(8))
    g = np.array([[0, -1], [1, 0]], dtype=complex)
    np.testing.assert_array_equal(tg.group_generator([g]), g)
    c, d, c2, d2 = random_qubits(rng, 4)
    gen = tg.group_generator([sp.psi1(c), sp.psi1(d)])
    np.testing.assert_allclose(gen @ tg.kron_vec(c2, d2), tg.kron_vec(sp.psi1(c) @ c2, sp.psi1(d) @ d2), atol=1e-14)
    t = tg.group_generator(random_su2(rng, 3))
    np.testing.assert_allclose(t.conj().T @ t, np.eye(8), atol=1e-12)
    assert abs(np.linalg.det(t)) == pytest.approx(1)
    with pytest.raises(DomainError):
        tg.group_generator([sp.pauli(1), np.eye(2)])


def test_word_evaluate(rng):
    assert np.array_equal(tg.word_evaluate(tg.GroupWord(2)), np.eye(4))
    gens = random_su2(rng, 2)
    single = tg.GroupWord(2, ((gens, 1),))
    np.testing.assert_allclose(tg.word_evaluate(single), np.kron(gens[0], gens[1]))
    w = tg.GroupWord(2, tuple((random_su2(rng, 2), e) for e in (1, -1, 1, 1, -1)))
    np.testing.assert_allclose(tg.word_evaluate(w) @ tg.word_evaluate(w.inverse()), np.eye(4), atol=1e-12)
    # exponent -1 is the inverse matrix
    inv = tg.GroupWord(2, ((gens, -1),))
    np.testing.assert_allclose(tg.word_evaluate(inv), np.linalg.inv(np.kron(gens[0], gens[1])), atol=1e-12)


def test_word_validation():
    with pytest.raises(ValueError):
        tg.GroupWord(2, ((np.eye(2)[None], 1),))
    with pytest.raises(ValueError):
        tg.GroupWord(1, ((np.eye(2)[None], 2),))
    bad = tg.GroupWord(1, ((2 * np.eye(2)[None], 1),))
    with pytest.raises(DomainError):
        tg.word_evaluate(bad)


def test_word_reduce(rng):
    assert len(tg.word_reduce(tg.GroupWord(2))) == 0
    g = random_su2(rng, 2)
    cancel = tg.word_reduce(tg.GroupWord(2, ((g, 1), (g, -1))))
    assert len(cancel) == 1
    np.testing.assert_allclose(tg.word_evaluate(cancel), np.eye(4), atol=1e-14)
    h = random_su2(rng, 2)
    merged = tg.word_reduce(tg.GroupWord(2, ((g, 1), (h, 1))))
    np.testing.assert_allclose(merged.factors[0][0], g @ h)


def test_word_reduce_random(rng):
    for k in range(100):
        n = 1 + k % 3
        length = int(rng.integers(0, 9))
        w = tg.GroupWord(n, tuple((random_su2(rng, n), int(e)) for e in rng.choice([-1, 1], length)))
        reduced = tg.word_reduce(w)
        assert len(reduced) <= 1
        np.testing.assert_allclose(tg.word_evaluate(reduced), tg.word_evaluate(w), atol=1e-12)


def test_operator_schmidt_rank(rng):
    a, b = random_su2(rng, 2)
    result = tg.operator_schmidt_rank(np.kron(a, b), 1)
    assert result.rank == 1 and result.singular_values[1] < 1e-10
    assert tg.operator_schmidt_rank(CNOT, 1).rank == 2
    assert _oracles.realignment_rank(CNOT, 1, 2) == 2
    assert tg.operator_schmidt_rank(np.eye(4), 1).rank == 1
    with pytest.raises(ValueError):
        tg.operator_schmidt_rank(np.eye(4), 2)
    with pytest.raises(ValueError):
        tg.operator_schmidt_rank(np.eye(4), 0)


def test_operator_schmidt_rank_matches_loop_oracle(rng):
    for n in (2, 3):
        for cut in range(1, n):
            m = rng.standard_normal((2**n, 2**n)) + 1j * rng.standard_normal((2**n, 2**n))
            assert tg.operator_schmidt_rank(m, cut).rank == _oracles.realignment_rank(m, cut, n)
    m = np.kron(np.kron(random_su2(rng), CNOT), np.eye(1))
    assert tg.operator_schmidt_rank(m, 1).rank == 1
    assert tg.operator_schmidt_rank(m, 2).rank == 2


def test_vector_schmidt_rank(rng):
    c, d = random_qubits(rng, 2)
    assert tg.vector_schmidt_rank(tg.kron_vec(c, d), 1).rank == 1
    sv = tg.vector_schmidt_rank(tg.bell_state("00"), 1)
    assert sv.rank == 2
    np.testing.assert_allclose(sv.singular_values, [1 / np.sqrt(2)] * 2)
    for cut in (1, 2):
        assert tg.vector_schmidt_rank(tg.canonical_ket("000"), cut).rank == 1
    with pytest.raises(ValueError):
        tg.vector_schmidt_rank(tg.canonical_ket("00"), 2)


@pytest.mark.parametrize("eps,index", [("0", 0), ("10", 2), ("111", 7), ("0110", 6)])
def test_canonical_ket(eps, index):
    ket = tg.canonical_ket(eps)
    assert ket[index] == 1 and np.count_nonzero(ket) == 1
    factors = [np.eye(2)[int(b)] for b in eps]
    np.testing.assert_array_equal(ket, functools.reduce(np.kron, factors))


def test_bell_state_examples():
    h = 1 / np.sqrt(2)
    np.testing.assert_allclose(tg.bell_state("00"), [h, 0, 0, h])
    np.testing.assert_allclose(tg.bell_state("10"), [h, 0, 0, -h])
    np.testing.assert_allclose(tg.bell_state("01"), [0, h, h, 0])
    np.testing.assert_allclose(tg.bell_state("11"), [0, h, -h, 0])
    expected = np.zeros(8)
    expected[[0, 7]] = h
    np.testing.assert_allclose(tg.bell_state("000"), expected)
    with pytest.raises(ValueError):
        tg.bell_state("0")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bell_basis(n):
    states = np.array([tg.bell_state(e) for e in tg.bitstrings(n)])
    np.testing.assert_allclose(states.conj() @ states.T, np.eye(2**n), atol=1e-12)
    for x in states:
        assert np.count_nonzero(x) == 2
        np.testing.assert_allclose(np.abs(x[x != 0]), 1 / np.sqrt(2))
        rho = tg.reduced_density_first_qubit(x)
        np.testing.assert_allclose(rho, np.eye(2) / 2, atol=1e-12)
        np.testing.assert_allclose(rho, _oracles.partial_trace_loop(x, n), atol=1e-15)
        assert tg.vector_schmidt_rank(x, 1).rank == 2


def test_reduced_density(rng):
    c = random_qubits(rng)
    rest = random_qubits(rng)
    rho = tg.reduced_density_first_qubit(tg.kron_vec(c, rest))
    np.testing.assert_allclose(rho, np.outer(c, c.conj()), atol=1e-14)
    np.testing.assert_array_equal(tg.reduced_density_first_qubit(tg.canonical_ket("00")), np.diag([1, 0]))
    with pytest.raises(ValueError):
        tg.reduced_density_first_qubit([1, 0])
