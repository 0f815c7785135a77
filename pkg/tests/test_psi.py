import json
from pathlib import Path

import numpy as np
import pytest

from quregroups import psi as ps
from quregroups import spinor as sp
from quregroups.errors import ResourceError
from quregroups.tensor import bell_state, bitstrings, kron_vec, operator_schmidt_rank
from quregroups.verify.oracles import random_qubits

import _oracles

GOLDEN = Path(__file__).parent / "data" / "sigma3_mismatches.json"


def test_literal_tables_transcription():
    t1 = ps.literal_tables(1)
    assert t1.I.tolist() == [[0, 1], [1, 0]]
    assert t1.Sigma.tolist() == [[1, -1], [1, 1]]
    assert ps.literal_tables(2).I[1].tolist() == [1, 0, 3, 2]
    assert ps.literal_tables(2).Sigma.tolist() == [[1, -1, -1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, 1, 1, 1]]
    t3 = ps.literal_tables(3)
    assert t3.Sigma[7].tolist() == [1] * 8
    assert t3.Sigma[4].tolist() == [1, -1, -1, 1, 1, 1, -1, -1]
    assert t3.Sigma[5].tolist() == [1, 1, -1, -1, 1, -1, -1, -1]
    assert t3.I[5].tolist() == [5, 4, 7, 6, 1, 0, 3, 2]
    assert all(ps.literal_tables(n).source == "literal" for n in (1, 2, 3))
    with pytest.raises(ValueError):
        ps.literal_tables(4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_literal_index_structure(n):
    t = ps.literal_tables(n)
    assert t.index_rows_are_permutations()
    assert np.array_equal(t.I, t.I.T)
    assert np.all(np.diag(t.I) == 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_root_of_unity(n):
    rho = ps.root_of_unity(n)
    assert abs(rho) == pytest.approx(1, abs=1e-15)
    assert abs(rho ** (2**n) - 1) < 1e-12
    assert abs(rho ** (2 ** (n - 1)) + 1) < 1e-12
    assert rho == pytest.approx(np.exp(1j * np.pi / 2 ** (n - 1)))


def test_generated_tables():
    for n in (1, 2):
        assert ps.compare_tables(ps.literal_tables(n), ps.generated_tables(n)) == []
    assert np.array_equal(ps.generated_tables(3).I, ps.literal_tables(3).I)
    for n in range(1, 7):
        t = ps.generated_tables(n)
        assert t.source == "generated" and t.index_rows_are_permutations()
    with pytest.raises(ResourceError):
        ps.generated_tables(11)
    with pytest.raises(ValueError):
        ps.generated_tables(0)


def test_generated_sigma_is_kronecker_structured():
    # rule (-1)^popcount(j & ~i) factorises over bits: Sigma_n = Sigma_1 (x) ... (x) Sigma_1
    s1 = ps.literal_tables(1).Sigma
    for n in range(2, 6):
        expected = s1
        for _ in range(n - 1):
            expected = np.kron(expected, s1)
        assert np.array_equal(ps.generated_tables(n).Sigma, expected)


def test_sigma3_mismatches_match_golden():
    got = [
        {"matrix": m, "i": i, "j": j, "literal": a, "generated": b}
        for m, i, j, a, b in ps.compare_tables(ps.literal_tables(3), ps.generated_tables(3))
    ]
    assert got == json.loads(GOLDEN.read_text())
    assert {g["matrix"] for g in got} == {"Sigma"}


def test_compare_tables_rejects_mismatched_n():
    with pytest.raises(ValueError):
        ps.compare_tables(ps.literal_tables(1), ps.literal_tables(2))


def test_psi_n_examples():
    x = np.array([0.3 + 0.1j, -0.7j])
    x0, x1 = x
    np.testing.assert_array_equal(ps.psi_n(x, ps.literal_tables(1)), [[x0, x1], [x1, -x0]])
    np.testing.assert_array_equal(ps.psi_n([1, 0, 0, 0], ps.literal_tables(2)), np.diag([1, 1j, -1, -1j]))
    # not the identity
    np.testing.assert_array_equal(ps.psi_n([1, 0], ps.literal_tables(1)), [[1, 0], [0, -1]])
    with pytest.raises(ValueError):
        ps.psi_n([1, 0, 0], ps.literal_tables(1))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("source", ["literal", "generated"])
def test_psi_n_matches_entrywise_oracle(rng, n, source):
    t = ps.literal_tables(n) if source == "literal" else ps.generated_tables(n)
    x = ps.random_states(rng, 1, 2**n)[0]
    expected = _oracles.psi_entrywise(x, t.Sigma.tolist(), t.I.tolist(), n)
    np.testing.assert_allclose(ps.psi_n(x, t), expected, atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_psi_n_linear(rng, n):
    t = ps.literal_tables(n)
    x, y = rng.standard_normal((2, 2**n)) + 1j * rng.standard_normal((2, 2**n))
    a, b = 0.3 - 2j, 1.5 + 0.25j
    np.testing.assert_allclose(ps.psi_n(a * x + b * y, t), a * ps.psi_n(x, t) + b * ps.psi_n(y, t), atol=1e-14)


def test_verify_unitarity():
    v = ps.verify_unitarity(ps.literal_tables(1), 200, seed=3)
    assert v.status == "report-only" and v.samples == 200
    # [[x0, x1], [x1, -x0]] is orthogonal for real unit x
    assert v.details["real_inputs_unitarity_residual"] < 1e-14
    assert v.details["holds_within_tol"] is False
    assert v.to_dict() == ps.verify_unitarity(ps.literal_tables(1), 200, seed=3).to_dict()


def test_verify_separable_consistency():
    v = ps.verify_separable_consistency([[1, 0], [1, 0]], ps.literal_tables(2))
    np.testing.assert_allclose(
        v.max_residual, np.linalg.norm(np.diag([1, 1j, -1, -1j]) - np.eye(4), 2), rtol=1e-15
    )
    assert v.details["mismatch_entries"] == [[1, 1], [2, 2], [3, 3]]
    # n = 1: psi_1(c) = [[c0, c1], [c1, -c0]] against [[c0, -conj c1], [c1, conj c0]]
    c = np.array([0.6, 0.8])
    v1 = ps.verify_separable_consistency([c], ps.literal_tables(1))
    direct = ps.psi_n(c, ps.literal_tables(1)) - sp.psi1(c)
    assert v1.max_residual == pytest.approx(np.linalg.norm(direct, 2))
    assert v1.details["mismatch_entries"] == [[0, 1], [1, 1]]


def test_verify_separable_consistency_deterministic():
    def once():
        cs = random_qubits(np.random.default_rng(9), 50, 3)
        return ps.verify_separable_consistency(cs, ps.literal_tables(3)).to_dict()

    assert once() == once()


def test_bell_images_n2_literal():
    images = ps.bell_images(2, ps.literal_tables(2))
    assert [eps for eps, _, _ in images] == bitstrings(2)
    eps, m, v = images[0]
    h = 1 / np.sqrt(2)
    # rows 0 and 3 coincide: both read x[0] at column 0 and x[3] at column 3
    np.testing.assert_allclose(m[0], [h, 0, 0, -1j * h], atol=1e-16)
    np.testing.assert_array_equal(m[0], m[3])
    assert v.details["matrix_rank"] == 2 and v.details["distinct_rows"] == 3
    assert v.details["abs_det"] == 0
    for eps, m, v in images:
        expected = _oracles.psi_entrywise(bell_state(eps), ps.literal_tables(2).Sigma.tolist(),
                                          ps.literal_tables(2).I.tolist(), 2)
        np.testing.assert_allclose(m, expected, atol=1e-15)
        assert v.status == "report-only"
        assert v.details["operator_schmidt_ranks"] == [operator_schmidt_rank(m, 1).rank]


def test_bell_images_n3_and_errors():
    images = ps.bell_images(3, ps.literal_tables(3))
    assert len(images) == 8
    with pytest.raises(ValueError):
        ps.bell_images(4, ps.generated_tables(4))
    with pytest.raises(ValueError):
        ps.bell_images(2, ps.literal_tables(3))


def test_product_state_image_contrast(rng):
    c = random_qubits(rng, 2)
    m = ps.psi_n(kron_vec(c[0], c[1]), ps.literal_tables(2))
    assert operator_schmidt_rank(m, 1).rank == _oracles.realignment_rank(m, 1, 2) == 1


@pytest.mark.parametrize("n,source,ranks", [
    (2, "literal", [1]),
    (2, "generated", [1]),
    (3, "generated", [1, 1]),
    (3, "literal", [2, 3]),
])
def test_product_image_schmidt_ranks(n, source, ranks):
    t = ps.literal_tables(n) if source == "literal" else ps.generated_tables(n)
    cs = random_qubits(np.random.default_rng(4), 20, n)
    v = ps.verify_separable_consistency(cs, t)
    assert v.details["max_image_operator_schmidt_rank_per_cut"] == ranks
