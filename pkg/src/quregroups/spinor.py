"""Unit quaternions, qubits and SU(2).

Qubits are complex arrays of shape ``(..., 2)``; SU(2) elements are
``(..., 2, 2)``.  Inputs are validated against the unit sphere / SU(2) and
never renormalised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from quregroups.clifford import DEFAULT_TOL, check_unit_axis, quaternion_multiply
from quregroups.errors import DomainError, PreconditionError

PAULI = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}
for _m in PAULI.values():
    _m.setflags(write=False)

IDENTITY2 = np.eye(2, dtype=complex)
IDENTITY2.setflags(write=False)

Pairing = Literal["literal", "conventional"]

__all__ = [
    "CompositionVerdict",
    "PAULI",
    "QUBIT_IDENTITY",
    "Qubit",
    "conjugation_action",
    "pauli",
    "phi_composition_check",
    "phi_map",
    "psi0",
    "psi1",
    "psi1_inv",
    "qubit_inverse",
    "star1",
    "su2_residuals",
]


class Qubit(NamedTuple):
    c0: complex
    c1: complex


def pauli(k: int) -> np.ndarray:
    if k not in PAULI:
        raise ValueError(f"Pauli index must be 1, 2 or 3, got {k!r}")
    return PAULI[k].copy()


def _check_unit(x, what: str, tol: float) -> np.ndarray:
    x = np.asarray(x)
    if np.any(np.abs(np.sum(np.abs(x) ** 2, axis=-1) - 1.0) > tol):
        raise PreconditionError(f"{what} must have unit norm")
    return x


def _check_qubit(c, tol: float) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    if c.shape[-1:] != (2,):
        raise ValueError(f"a qubit has 2 amplitudes, got shape {c.shape}")
    return _check_unit(c, "qubit", tol)


def su2_residuals(m) -> tuple[np.ndarray, np.ndarray]:
    """Per-matrix max-entry residuals of M^H M - Id and det(M) - 1."""
    m = np.asarray(m, dtype=complex)
    gram = np.conj(np.swapaxes(m, -1, -2)) @ m
    unitarity = np.max(np.abs(gram - IDENTITY2), axis=(-2, -1))
    det = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    return unitarity, np.abs(det - 1.0)


def is_su2(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    unitarity, det = su2_residuals(m)
    return (unitarity <= tol) & (det <= tol)


def check_su2(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape[-2:] != (2, 2):
        raise ValueError(f"expected 2x2 matrices, got shape {m.shape}")
    if not np.all(is_su2(m, tol)):
        raise DomainError("matrix is not in SU(2) within tolerance")
    return m


def phi_map(q, pairing: Pairing = "literal", tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unit quaternion (a0, a1, a2, a3) over (1, t1, t2, t3) to a 2x2 unitary.

    ``literal`` is a0 Id + i a2 s1 + i a1 s2 + i a3 s3, i.e.
    [[a0 + i a3, a1 + i a2], [-a1 + i a2, a0 - i a3]].
    ``conventional`` swaps the roles of a1 and a2.
    """
    q = np.asarray(q, dtype=float)
    if q.shape[-1:] != (4,):
        raise ValueError(f"a quaternion has 4 coefficients, got shape {q.shape}")
    _check_unit(q, "quaternion", tol)
    a0, a1, a2, a3 = np.moveaxis(q, -1, 0)
    if pairing == "conventional":
        a1, a2 = a2, a1
    elif pairing != "literal":
        raise ValueError(f"unknown pairing {pairing!r}")
    out = np.empty(q.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = a0 + 1j * a3
    out[..., 0, 1] = a1 + 1j * a2
    out[..., 1, 0] = -a1 + 1j * a2
    out[..., 1, 1] = a0 - 1j * a3
    return out


@dataclass(frozen=True)
class CompositionVerdict:
    """How phi_map composes: ``hom`` means phi(pq) = phi(p) phi(q), ``anti`` the reverse order."""

    verdict: str
    hom_residual: float
    anti_residual: float


def phi_composition_check(p, q, pairing: Pairing = "literal", tol: float = DEFAULT_TOL) -> CompositionVerdict:
    """Compare phi(pq) with phi(p)phi(q) and phi(q)phi(p).

    The verdict is ``homomorphism``, ``anti-homomorphism``, ``both`` (commuting
    inputs, where the two orderings coincide) or ``neither``.  Residuals are
    maxima over any batch axes.
    """
    pq = phi_map(quaternion_multiply(p, q), pairing, tol)
    fp, fq = phi_map(p, pairing, tol), phi_map(q, pairing, tol)
    hom = float(np.max(np.abs(pq - fp @ fq)))
    anti = float(np.max(np.abs(pq - fq @ fp)))
    if hom <= tol and anti <= tol:
        verdict = "both"
    elif hom <= tol:
        verdict = "homomorphism"
    elif anti <= tol:
        verdict = "anti-homomorphism"
    else:
        verdict = "neither"
    return CompositionVerdict(verdict, hom, anti)


def conjugation_action(u) -> np.ndarray:
    """Real 3x3 matrix of M -> U M U^H on span{s1, s2, s3} (Pauli basis)."""
    u = np.asarray(u, dtype=complex)
    uh = np.conj(np.swapaxes(u, -1, -2))
    out = np.empty(u.shape[:-2] + (3, 3))
    for j in (1, 2, 3):
        image = u @ PAULI[j] @ uh
        for i in (1, 2, 3):
            # Pauli matrices are trace-orthogonal with Tr(s_i s_i) = 2
            out[..., i - 1, j - 1] = np.real(np.einsum("...ab,ba->...", image, PAULI[i])) / 2
    return out


def psi0(theta, r, tol: float = DEFAULT_TOL) -> np.ndarray:
    """(theta, r) -> (cos t - i r3 sin t, r1 sin t + i r2 sin t), full angle."""
    r = check_unit_axis(r, tol)
    theta = np.asarray(theta, dtype=float)
    s, c = np.sin(theta), np.cos(theta)
    out = np.empty(np.broadcast_shapes(theta.shape, r.shape[:-1]) + (2,), dtype=complex)
    out[..., 0] = c - 1j * r[..., 2] * s
    out[..., 1] = r[..., 0] * s + 1j * r[..., 1] * s
    return out


def psi1(c, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Qubit (c0, c1) -> [[c0, -conj(c1)], [c1, conj(c0)]]."""
    c = _check_qubit(c, tol)
    c0, c1 = c[..., 0], c[..., 1]
    out = np.empty(c.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = c0
    out[..., 0, 1] = -np.conj(c1)
    out[..., 1, 0] = c1
    out[..., 1, 1] = np.conj(c0)
    return out


def psi1_inv(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """First column of an SU(2) matrix; the second column is forced by it."""
    m = check_su2(m, tol)
    return m[..., :, 0].copy()


def star1(a, b, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Qubit group law: (a0 b0 - conj(a1) b1, a1 b0 + conj(a0) b1)."""
    a, b = _check_qubit(a, tol), _check_qubit(b, tol)
    a0, a1, b0, b1 = a[..., 0], a[..., 1], b[..., 0], b[..., 1]
    return np.stack([a0 * b0 - np.conj(a1) * b1, a1 * b0 + np.conj(a0) * b1], axis=-1)


def qubit_inverse(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    a = _check_qubit(a, tol)
    return np.stack([np.conj(a[..., 0]), -a[..., 1]], axis=-1)


QUBIT_IDENTITY = Qubit(1 + 0j, 0j)
