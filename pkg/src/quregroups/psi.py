"""Entrywise maps from quregisters to 2^n x 2^n matrices.

A map is fixed by an index table I, a sign table Sigma and the root
rho = exp(i pi / 2^(n-1)); it sends x to the matrix with entries

    Sigma[i, j] * rho**j * x[I[i, j]]

with no conjugation.  The tables for n = 1, 2, 3 are kept verbatim as data
(``literal``); ``generated_tables`` produces tables for any n from the rule
I = i XOR j, Sigma = (-1)^popcount(j AND NOT i), which is checked against the
literal data rather than trusted.

The ``verify_*`` functions measure properties claimed for these maps and
return report-only verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from quregroups.clifford import DEFAULT_TOL
from quregroups.errors import ResourceError
from quregroups.spinor import psi1
from quregroups.tensor import (
    bell_state,
    bitstrings,
    dagger,
    kron_all,
    kron_vec,
    operator_schmidt_rank,
)
from quregroups.verdict import REPORT_ONLY, ClaimVerdict

MAX_GENERATED_N = 10

_LITERAL_I = {
    1: [[0, 1],
        [1, 0]],
    2: [[0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0]],
    3: [[0, 1, 2, 3, 4, 5, 6, 7],
        [1, 0, 3, 2, 5, 4, 7, 6],
        [2, 3, 0, 1, 6, 7, 4, 5],
        [3, 2, 1, 0, 7, 6, 5, 4],
        [4, 5, 6, 7, 0, 1, 2, 3],
        [5, 4, 7, 6, 1, 0, 3, 2],
        [6, 7, 4, 5, 2, 3, 0, 1],
        [7, 6, 5, 4, 3, 2, 1, 0]],
}

_LITERAL_SIGMA = {
    1: [[1, -1],
        [1, 1]],
    2: [[1, -1, -1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, 1, 1, 1]],
    3: [[1, -1, -1, 1, -1, 1, 1, -1],
        [1, 1, -1, -1, -1, -1, 1, 1],
        [1, -1, 1, -1, -1, 1, -1, 1],
        [1, 1, 1, 1, -1, -1, -1, -1],
        [1, -1, -1, 1, 1, 1, -1, -1],
        [1, 1, -1, -1, 1, -1, -1, -1],
        [1, -1, 1, -1, 1, -1, 1, -1],
        [1, 1, 1, 1, 1, 1, 1, 1]],
}

__all__ = [
    "PsiTables",
    "bell_images",
    "compare_tables",
    "generated_tables",
    "literal_tables",
    "psi_n",
    "root_of_unity",
    "verify_separable_consistency",
    "verify_unitarity",
]


_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def root_powers(n: int, exponents) -> np.ndarray:
    """exp(2 pi i k / 2^n) for each k, exact whenever k is a multiple of a quarter turn."""
    k = np.asarray(exponents, dtype=np.int64) % 2**n
    out = np.exp(2j * np.pi * k / 2**n)
    quarter = (4 * k) % 2**n == 0
    out[quarter] = np.take(_QUARTER_TURNS, (4 * k[quarter]) // 2**n)
    return out


def root_of_unity(n: int) -> complex:
    """Primitive 2^n-th root exp(2 pi i / 2^n)."""
    return complex(root_powers(n, [1])[0])


@dataclass(frozen=True)
class PsiTables:
    n: int
    I: np.ndarray
    Sigma: np.ndarray
    rho: complex
    source: Literal["literal", "generated"]

    def __post_init__(self):
        dim = 2**self.n
        for name in ("I", "Sigma"):
            arr = np.array(getattr(self, name), dtype=np.int64)
            if arr.shape != (dim, dim):
                raise ValueError(f"{name} must be {dim}x{dim}, got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if np.any((self.I < 0) | (self.I >= dim)):
            raise ValueError("index table entries must lie in [0, 2^n)")
        if np.any(np.abs(self.Sigma) != 1):
            raise ValueError("sign table entries must be +1 or -1")

    @property
    def dim(self) -> int:
        return 2**self.n

    def index_rows_are_permutations(self) -> bool:
        target = np.arange(self.dim)
        return all(np.array_equal(np.sort(self.I[k]), target) for k in range(self.dim)) and all(
            np.array_equal(np.sort(self.I[:, k]), target) for k in range(self.dim)
        )


def literal_tables(n: int) -> PsiTables:
    if n not in _LITERAL_I:
        raise ValueError(f"literal tables exist for n = 1, 2, 3 only, got {n!r}")
    return PsiTables(n, _LITERAL_I[n], _LITERAL_SIGMA[n], root_of_unity(n), "literal")


def generated_tables(n: int, max_n: int = MAX_GENERATED_N) -> PsiTables:
    if n < 1:
        raise ValueError(f"n must be positive, got {n!r}")
    if n > max_n:
        raise ResourceError(f"dense {2**n}x{2**n} tables exceed the budget (n <= {max_n})")
    i = np.arange(2**n)[:, None]
    j = np.arange(2**n)[None, :]
    masked = j & ~i
    popcount = np.zeros_like(masked)
    for bit in range(n):
        popcount += (masked >> bit) & 1
    return PsiTables(n, i ^ j, np.where(popcount % 2, -1, 1), root_of_unity(n), "generated")


def compare_tables(a: PsiTables, b: PsiTables) -> list[tuple[str, int, int, int, int]]:
    """Every coordinate where the tables differ, as (matrix, i, j, a value, b value)."""
    if a.n != b.n:
        raise ValueError(f"cannot compare tables for n={a.n} and n={b.n}")
    out = []
    for name in ("I", "Sigma"):
        left, right = getattr(a, name), getattr(b, name)
        for i, j in np.argwhere(left != right):
            out.append((name, int(i), int(j), int(left[i, j]), int(right[i, j])))
    return out


def psi_n(x, t: PsiTables) -> np.ndarray:
    """Matrix with entries Sigma[i, j] * rho**j * x[I[i, j]], batched over leading axes of x."""
    x = np.asarray(x)
    if x.shape[-1] != t.dim:
        raise ValueError(f"tables for n={t.n} need {t.dim} amplitudes, got {x.shape[-1]}")
    phases = root_powers(t.n, np.arange(t.dim))
    return t.Sigma * phases[None, :] * x[..., t.I]


def random_states(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    """Uniform points on the unit sphere of C^dim via normalised complex Gaussians."""
    z = rng.standard_normal((size, dim)) + 1j * rng.standard_normal((size, dim))
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def operator_norms(m) -> np.ndarray:
    return np.linalg.norm(m, ord=2, axis=(-2, -1))


def _det(m) -> np.ndarray:
    return np.linalg.det(m)


def verify_unitarity(
    t: PsiTables, samples: int, tol: float = DEFAULT_TOL, seed=0, claim_id: str = "psi-unitarity",
    paper_ref: str = "psi_n maps unit quregisters into SU(2)^(x)n",
) -> ClaimVerdict:
    """Measure ||psi(x)^H psi(x) - Id|| and |det psi(x) - 1| over random unit x."""
    x = random_states(_rng(seed), samples, t.dim)
    m = psi_n(x, t)
    gram_err = dagger(m) @ m - np.eye(t.dim)
    op = operator_norms(gram_err)
    entry = np.max(np.abs(gram_err), axis=(-2, -1))
    det_err = np.abs(_det(m) - 1.0)
    real_x = x.real / np.linalg.norm(x.real, axis=-1, keepdims=True)
    real_m = psi_n(real_x, t)
    real_op = operator_norms(dagger(real_m) @ real_m - np.eye(t.dim))
    return ClaimVerdict(
        claim_id, paper_ref, REPORT_ONLY, float(op.max()), samples,
        details={
            "n": t.n,
            "source": t.source,
            "unitarity_residual_operator_norm": float(op.max()),
            "unitarity_residual_max_entry": float(entry.max()),
            "fraction_unitary_within_tol": float(np.mean(op <= tol)),
            "det_minus_one_max": float(det_err.max()),
            "det_minus_one_min": float(det_err.min()),
            "real_inputs_unitarity_residual": float(real_op.max()),
            "holds_within_tol": bool(op.max() <= tol and det_err.max() <= tol),
        },
    )


def verify_separable_consistency(
    cs, t: PsiTables, tol: float = DEFAULT_TOL, claim_id: str = "psi-separable",
    paper_ref: str = "psi_n agrees with the operator tensor product on product states",
) -> ClaimVerdict:
    """Compare psi_n(c_{n-1} (x) ... (x) c_0) with psi1(c_{n-1}) (x) ... (x) psi1(c_0).

    ``cs`` has shape (n, 2) for one product state or (samples, n, 2).
    """
    cs = np.asarray(cs, dtype=complex)
    if cs.ndim == 2:
        cs = cs[None]
    if cs.shape[1:] != (t.n, 2):
        raise ValueError(f"expected qubits of shape (samples, {t.n}, 2), got {cs.shape}")
    state = cs[:, 0]
    for k in range(1, t.n):
        state = kron_vec(state, cs[:, k])
    lhs = psi_n(state, t)
    rhs = kron_all([psi1(cs[:, k]) for k in range(t.n)])
    diff = lhs - rhs
    op = operator_norms(diff)
    mismatch = np.any(np.abs(diff) > tol, axis=0)
    image_ranks = [
        max((operator_schmidt_rank(m, cut).rank for m in lhs), default=0) for cut in range(1, t.n)
    ]
    return ClaimVerdict(
        claim_id, paper_ref, REPORT_ONLY, float(op.max()), len(cs),
        details={
            "n": t.n,
            "source": t.source,
            "residual_operator_norm": float(op.max()),
            "residual_max_entry": float(np.abs(diff).max()),
            "mismatch_entries": [[int(i), int(j)] for i, j in np.argwhere(mismatch)],
            "max_image_operator_schmidt_rank_per_cut": image_ranks,
            "holds_within_tol": bool(op.max() <= tol),
        },
    )


def bell_images(n: int, t: PsiTables, tol: float = DEFAULT_TOL) -> list[tuple[str, np.ndarray, ClaimVerdict]]:
    """psi_n image of every Bell state, with unitarity, rank and Schmidt-rank measurements."""
    if not 2 <= n <= 3 or t.n != n:
        raise ValueError(f"Bell images need 2 <= n = t.n <= 3, got n={n}, t.n={t.n}")
    out = []
    for eps in bitstrings(n):
        m = psi_n(bell_state(eps), t)
        gram_err = dagger(m) @ m - np.eye(t.dim)
        residual = float(operator_norms(gram_err))
        schmidt = [operator_schmidt_rank(m, cut).rank for cut in range(1, n)]
        _, unique_rows = np.unique(np.round(m, 12) + 0.0, axis=0, return_index=True)
        verdict = ClaimVerdict(
            f"bell-image-{eps}", "psi_n images of Bell states", REPORT_ONLY, residual, 1,
            details={
                "eps": eps,
                "matrix_rank": int(np.linalg.matrix_rank(m, tol=tol)),
                "distinct_rows": int(len(unique_rows)),
                "unitarity_residual": residual,
                "abs_det": float(abs(_det(m))),
                "operator_schmidt_ranks": schmidt,
            },
        )
        out.append((eps, m, verdict))
    return out
