"""Kronecker products, group tensor powers of SU(2), and separability measures.

Quregisters are complex vectors of length 2**n.  Amplitude index order is
big-endian: the ket |e_{n-1} ... e_1 e_0> sits at index int("e_{n-1}...e_0", 2),
so the leftmost bit is the highest tensor factor.  This convention is shared by
every module in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from quregroups.clifford import DEFAULT_TOL
from quregroups.errors import DomainError
from quregroups.spinor import check_su2

RANK_RTOL = 1e-8

__all__ = [
    "GroupWord",
    "SchmidtRank",
    "bell_state",
    "canonical_ket",
    "group_generator",
    "kron_mat",
    "kron_vec",
    "operator_schmidt_rank",
    "reduced_density_first_qubit",
    "vector_schmidt_rank",
    "word_evaluate",
    "word_reduce",
]


def num_qubits(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    return n


def kron_vec(x, y) -> np.ndarray:
    """Kronecker product of state vectors; entry i * len(y) + j is x[i] * y[j]."""
    x, y = np.asarray(x), np.asarray(y)
    out = np.einsum("...i,...j->...ij", x, y)
    return out.reshape(out.shape[:-2] + (-1,))


def kron_mat(a, b) -> np.ndarray:
    """Block Kronecker product, batched over leading axes."""
    a, b = np.asarray(a), np.asarray(b)
    out = np.einsum("...ij,...kl->...ikjl", a, b)
    ra, ca = a.shape[-2:]
    rb, cb = b.shape[-2:]
    return out.reshape(out.shape[:-4] + (ra * rb, ca * cb))


def kron_all(mats: Sequence) -> np.ndarray:
    out = np.asarray(mats[0])
    for m in mats[1:]:
        out = kron_mat(out, m)
    return out


def group_generator(gs, tol: float = DEFAULT_TOL) -> np.ndarray:
    """g_{n-1} (x) ... (x) g_0 for SU(2) factors listed highest factor first."""
    gs = check_su2(gs, tol)
    if gs.ndim < 3 or gs.shape[-3] < 1:
        raise ValueError("need at least one SU(2) factor")
    return kron_all([gs[..., k, :, :] for k in range(gs.shape[-3])])


def dagger(m) -> np.ndarray:
    return np.conj(np.swapaxes(np.asarray(m), -1, -2))


@dataclass(frozen=True)
class GroupWord:
    """Word T_0^{e_0} ... T_{k-1}^{e_{k-1}} with each T_i a Kronecker product of n SU(2) factors."""

    n: int
    factors: tuple[tuple[np.ndarray, int], ...] = field(default=())

    def __post_init__(self):
        cleaned = []
        for gens, exponent in self.factors:
            gens = np.array(gens, dtype=complex)
            if gens.shape != (self.n, 2, 2):
                raise ValueError(f"generator must have shape ({self.n}, 2, 2), got {gens.shape}")
            if exponent not in (-1, 1):
                raise ValueError(f"exponent must be -1 or +1, got {exponent!r}")
            gens.setflags(write=False)
            cleaned.append((gens, int(exponent)))
        object.__setattr__(self, "factors", tuple(cleaned))

    def __len__(self):
        return len(self.factors)

    def inverse(self) -> GroupWord:
        return GroupWord(self.n, tuple((g, -e) for g, e in reversed(self.factors)))


def word_evaluate(w: GroupWord, tol: float = DEFAULT_TOL) -> np.ndarray:
    out = np.eye(2**w.n, dtype=complex)
    for gens, exponent in w.factors:
        try:
            t = group_generator(gens, tol)
        except DomainError as exc:
            raise DomainError(f"invalid word factor: {exc}") from None
        out = out @ (t if exponent == 1 else dagger(t))
    return out


def word_reduce(w: GroupWord) -> GroupWord:
    """Merge all factors component-wise into a single generator.

    Uses (x)g_i (x)h_i = (x)(g_i h_i) and ((x)g_i)^-1 = (x)g_i^-1, so any word
    over Kronecker generators collapses to length <= 1.
    """
    if not w.factors:
        return GroupWord(w.n)
    acc = np.broadcast_to(np.eye(2, dtype=complex), (w.n, 2, 2))
    for gens, exponent in w.factors:
        acc = acc @ (gens if exponent == 1 else dagger(gens))
    return GroupWord(w.n, ((acc, 1),))


class SchmidtRank(NamedTuple):
    rank: int
    singular_values: np.ndarray


def _check_cut(cut: int, n: int):
    if not 1 <= cut <= n - 1:
        raise ValueError(f"cut must lie in 1..{n - 1}, got {cut!r}")


def _rank(sv: np.ndarray, rtol: float) -> int:
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def realign(m, cut: int) -> np.ndarray:
    """Realigned matrix R[(a, c), (b, d)] = M[(a, b), (c, d)] for a split after ``cut`` qubits."""
    m = np.asarray(m)
    n = num_qubits(m.shape[-1])
    _check_cut(cut, n)
    left, right = 2**cut, 2 ** (n - cut)
    t = m.reshape(left, right, left, right)
    return t.transpose(0, 2, 1, 3).reshape(left * left, right * right)


def operator_schmidt_rank(m, cut: int, rtol: float = RANK_RTOL) -> SchmidtRank:
    """Operator Schmidt rank across a qubit cut; 1 iff M is a Kronecker product there."""
    sv = np.linalg.svd(realign(m, cut), compute_uv=False)
    return SchmidtRank(_rank(sv, rtol), sv)


def vector_schmidt_rank(x, cut: int, rtol: float = RANK_RTOL) -> SchmidtRank:
    x = np.asarray(x)
    n = num_qubits(x.shape[-1])
    _check_cut(cut, n)
    sv = np.linalg.svd(x.reshape(2**cut, 2 ** (n - cut)), compute_uv=False)
    return SchmidtRank(_rank(sv, rtol), sv)


def _bits(eps) -> list[int]:
    bits = [int(b) for b in eps]
    if not bits or any(b not in (0, 1) for b in bits):
        raise ValueError(f"expected a non-empty bitstring, got {eps!r}")
    return bits


def _index(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = out << 1 | b
    return out


def canonical_ket(eps) -> np.ndarray:
    """|e_{n-1}> (x) ... (x) |e_0> for a bitstring written most significant first."""
    bits = _bits(eps)
    out = np.zeros(2 ** len(bits), dtype=complex)
    out[_index(bits)] = 1
    return out


def bell_state(eps) -> np.ndarray:
    """(|0 e_{n-2}...e_0> + (-1)^{e_{n-1}} |1 ~e_{n-2}...~e_0>) / sqrt(2)."""
    bits = _bits(eps)
    if len(bits) < 2:
        raise ValueError("Bell states need at least two qubits")
    rest = bits[1:]
    out = np.zeros(2 ** len(bits), dtype=complex)
    out[_index([0] + rest)] = 1 / np.sqrt(2)
    out[_index([1] + [1 - b for b in rest])] = (-1) ** bits[0] / np.sqrt(2)
    return out


def bitstrings(n: int) -> list[str]:
    return [format(k, f"0{n}b") for k in range(2**n)]


def reduced_density_first_qubit(x) -> np.ndarray:
    """Trace out the trailing n-1 qubits of a pure state."""
    x = np.asarray(x)
    n = num_qubits(x.shape[-1])
    if n < 2:
        raise ValueError("need at least two qubits")
    a = x.reshape(x.shape[:-1] + (2, 2 ** (n - 1)))
    return a @ dagger(a)
