"""Reference computations that share no code with the routes they check."""

import numpy as np


def rodrigues(theta, r, v):
    """Right-handed rotation of v by theta about unit axis r."""
    theta = np.asarray(theta, dtype=float)[..., None]
    r, v = np.asarray(r, dtype=float), np.asarray(v, dtype=float)
    dot = np.sum(r * v, axis=-1, keepdims=True)
    return v * np.cos(theta) + np.cross(r, v) * np.sin(theta) + r * dot * (1 - np.cos(theta))


def random_unit_vectors(rng, size, dim=3):
    x = rng.standard_normal((size, dim))
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def random_qubits(rng, *shape):
    z = rng.standard_normal(shape + (2,)) + 1j * rng.standard_normal(shape + (2,))
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def random_su2(rng, *shape):
    """Haar-random SU(2) built directly as [[a, -conj(b)], [b, conj(a)]]."""
    q = random_qubits(rng, *shape)
    a, b = q[..., 0], q[..., 1]
    return np.stack([np.stack([a, -np.conj(b)], -1), np.stack([b, np.conj(a)], -1)], -2)
