"""Arithmetic in the Clifford algebra Cl(R^3) and its even subalgebra.

Multivectors are stored as 8 real coefficients over the blade basis

    [1, s1, s2, s3, t1, t2, t3, I]

with t1 = s2 s3, t2 = s3 s1, t3 = s1 s2 and I = s1 s2 s3.  Every function
accepts arrays of shape ``(..., 8)`` and broadcasts over leading axes, so a
batch of multivectors costs one ``einsum``.  :class:`Multivector` is a thin
immutable wrapper for single values.

The product table is generated from ``s_i s_i = 1`` and ``s_i s_j = -s_j s_i``
instead of being typed in by hand.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from quregroups.errors import PreconditionError

BLADE_NAMES = ("1", "s1", "s2", "s3", "t1", "t2", "t3", "I")
GRADES = (0, 1, 1, 1, 2, 2, 2, 3)
GRADE_SLICES = {0: [0], 1: [1, 2, 3], 2: [4, 5, 6], 3: [7]}
EVEN_INDICES = [0, 4, 5, 6]

DEFAULT_TOL = 1e-9

# (bitmask over s1=1, s2=2, s3=4; sign) such that blade = sign * canonical(bitmask),
# where canonical(bitmask) multiplies the generators in increasing order.
_BLADE_MASKS = (
    (0b000, 1),
    (0b001, 1),
    (0b010, 1),
    (0b100, 1),
    (0b110, 1),   # t1 = s2 s3
    (0b101, -1),  # t2 = s3 s1 = -s1 s3
    (0b011, 1),   # t3 = s1 s2
    (0b111, 1),   # I  = s1 s2 s3
)

__all__ = [
    "BLADE_NAMES",
    "AxisAngle",
    "Multivector",
    "Quaternion",
    "basis_blade",
    "even_part",
    "exterior_product",
    "geometric_product",
    "grade_projection",
    "inner_product",
    "mv_add",
    "mv_scale",
    "product_table",
    "quaternion_multiply",
    "quaternion_to_multivector",
    "reversion",
    "rotor_exp",
    "rotor_rotate",
    "sandwich",
    "vector_to_multivector",
]


def _reorder_sign(a: int, b: int) -> int:
    """Sign picked up when sorting canonical(a) * canonical(b) into canonical(a ^ b)."""
    swaps = 0
    for bit in range(3):
        if b >> bit & 1:
            # generator `bit` of b moves left past every higher generator of a
            swaps += bin(a >> (bit + 1)).count("1")
    return -1 if swaps % 2 else 1


def _build_product_table() -> tuple[np.ndarray, np.ndarray]:
    by_mask = {mask: (idx, sign) for idx, (mask, sign) in enumerate(_BLADE_MASKS)}
    index = np.zeros((8, 8), dtype=np.int64)
    sign = np.zeros((8, 8), dtype=np.int64)
    for p, (mp, sp) in enumerate(_BLADE_MASKS):
        for q, (mq, sq) in enumerate(_BLADE_MASKS):
            r, sr = by_mask[mp ^ mq]
            index[p, q] = r
            # canonical(mp ^ mq) = sr * blade_r, and sr is its own inverse
            sign[p, q] = sp * sq * _reorder_sign(mp, mq) * sr
    return index, sign


PRODUCT_INDEX, PRODUCT_SIGN = _build_product_table()
PRODUCT_INDEX.setflags(write=False)
PRODUCT_SIGN.setflags(write=False)

_STRUCTURE = np.zeros((8, 8, 8), dtype=np.int64)
for _p in range(8):
    for _q in range(8):
        _STRUCTURE[_p, _q, PRODUCT_INDEX[_p, _q]] = PRODUCT_SIGN[_p, _q]
_STRUCTURE.setflags(write=False)

_REVERSION_SIGNS = np.array([1, 1, 1, 1, -1, -1, -1, -1])


def product_table() -> list[list[tuple[int, str]]]:
    """Human-readable table: entry [p][q] is (sign, blade name) of e_p e_q."""
    return [
        [(int(PRODUCT_SIGN[p, q]), BLADE_NAMES[PRODUCT_INDEX[p, q]]) for q in range(8)]
        for p in range(8)
    ]


def basis_blade(name: str) -> np.ndarray:
    coeffs = np.zeros(8, dtype=np.int64)
    coeffs[BLADE_NAMES.index(name)] = 1
    return coeffs


def _as_coeffs(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.shape[-1:] != (8,):
        raise ValueError(f"expected trailing dimension 8, got shape {arr.shape}")
    return arr


def mv_add(a, b) -> np.ndarray:
    return _as_coeffs(a) + _as_coeffs(b)


def mv_scale(a, s) -> np.ndarray:
    return np.asarray(s)[..., None] * _as_coeffs(a) if np.ndim(s) else s * _as_coeffs(a)


def geometric_product(a, b) -> np.ndarray:
    """Clifford product of ``a`` and ``b``; exact for integer coefficients."""
    a, b = _as_coeffs(a), _as_coeffs(b)
    return np.einsum("...i,...j,ijk->...k", a, b, _STRUCTURE)


def grade_projection(a, k: int) -> np.ndarray:
    if k not in GRADE_SLICES:
        raise ValueError(f"grade must be 0, 1, 2 or 3, got {k!r}")
    a = _as_coeffs(a)
    out = np.zeros_like(a)
    idx = GRADE_SLICES[k]
    out[..., idx] = a[..., idx]
    return out


def reversion(a) -> np.ndarray:
    return _as_coeffs(a) * _REVERSION_SIGNS


def is_vector(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    a = _as_coeffs(a)
    others = np.delete(a, GRADE_SLICES[1], axis=-1)
    return np.all(np.abs(others) <= tol, axis=-1)


def _require_vectors(tol, *args):
    for x in args:
        if not np.all(is_vector(x, tol)):
            raise PreconditionError("inner/exterior products are defined for grade-1 vectors only")


def inner_product(x, y, tol: float = DEFAULT_TOL):
    """Scalar part of (xy + yx) / 2 for pure vectors."""
    _require_vectors(tol, x, y)
    sym = geometric_product(x, y) + geometric_product(y, x)
    return sym[..., 0] / 2


def exterior_product(x, y, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Bivector (xy - yx) / 2 for pure vectors."""
    _require_vectors(tol, x, y)
    return (geometric_product(x, y) - geometric_product(y, x)) / 2


def even_part(a) -> np.ndarray:
    """Coefficients over (1, t1, t2, t3), as a quaternion array ``(..., 4)``."""
    return _as_coeffs(a)[..., EVEN_INDICES]


def quaternion_to_multivector(q) -> np.ndarray:
    q = np.asarray(q)
    out = np.zeros(q.shape[:-1] + (8,), dtype=q.dtype)
    out[..., EVEN_INDICES] = q
    return out


def quaternion_multiply(p, q) -> np.ndarray:
    """Product inside the even subalgebra, inherited from the Clifford product."""
    return even_part(geometric_product(quaternion_to_multivector(p), quaternion_to_multivector(q)))


def vector_to_multivector(v) -> np.ndarray:
    v = np.asarray(v)
    out = np.zeros(v.shape[:-1] + (8,), dtype=np.result_type(v, np.int64))
    out[..., 1:4] = v
    return out


def check_unit_axis(r, tol: float = DEFAULT_TOL) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape[-1:] != (3,):
        raise ValueError(f"axis must have trailing dimension 3, got shape {r.shape}")
    if np.any(np.abs(np.linalg.norm(r, axis=-1) - 1.0) > tol):
        raise PreconditionError("rotation axis must be a unit vector")
    return r


def rotor_exp(theta, r, tol: float = DEFAULT_TOL) -> np.ndarray:
    """exp(I r theta) = cos(theta) + sin(theta) (r1 t1 + r2 t2 + r3 t3).

    Uses I s1 = t1, I s2 = t2, I s3 = t3.  Returns quaternion coefficients.
    """
    r = check_unit_axis(r, tol)
    theta = np.asarray(theta, dtype=float)
    return np.concatenate([np.cos(theta)[..., None], np.sin(theta)[..., None] * r], axis=-1)


def rotor_rotate(theta, r, v, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rotate ``v`` by ``theta`` about ``r`` (right-handed) via q v ~q, q = exp(-I r theta/2)."""
    q = quaternion_to_multivector(rotor_exp(-np.asarray(theta, dtype=float) / 2, r, tol))
    return sandwich(q, v)


def sandwich(q, v) -> np.ndarray:
    """Apply the rotor ``q`` (8 coefficients) to 3-vectors ``v``: grade-1 part of q v ~q."""
    out = geometric_product(geometric_product(q, vector_to_multivector(v)), reversion(q))
    return out[..., 1:4]


class Quaternion(NamedTuple):
    a0: float
    a1: float
    a2: float
    a3: float

    def is_unit(self, tol: float = DEFAULT_TOL) -> bool:
        return abs(sum(c * c for c in self) - 1.0) <= tol


class AxisAngle(NamedTuple):
    theta: float
    r: tuple[float, float, float]

    def validate(self, tol: float = DEFAULT_TOL) -> AxisAngle:
        if not -np.pi - tol <= self.theta <= np.pi + tol:
            raise PreconditionError(f"angle {self.theta} outside [-pi, pi]")
        check_unit_axis(self.r, tol)
        return self


class Multivector:
    """Immutable single multivector; ``*`` is the geometric product."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs)
        if arr.shape != (8,):
            raise ValueError(f"a multivector has 8 coefficients, got shape {arr.shape}")
        arr.setflags(write=False)
        self._coeffs = arr

    @classmethod
    def blade(cls, name: str) -> Multivector:
        return cls(basis_blade(name))

    @classmethod
    def scalar(cls, value) -> Multivector:
        return cls(np.array([value, 0, 0, 0, 0, 0, 0, 0]))

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    def __array__(self, dtype=None, copy=None):
        return self._coeffs if dtype is None else self._coeffs.astype(dtype)

    def __add__(self, other):
        if isinstance(other, Multivector):
            return Multivector(mv_add(self, other))
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self._coeffs - other._coeffs)
        return NotImplemented

    def __neg__(self):
        return Multivector(-self._coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return Multivector(geometric_product(self, other))
        if np.isscalar(other):
            return Multivector(mv_scale(self, other))
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Multivector(mv_scale(self, other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return bool(np.array_equal(self._coeffs, other._coeffs))

    def __hash__(self):
        return hash(tuple(self._coeffs.tolist()))

    def grade(self, k: int) -> Multivector:
        return Multivector(grade_projection(self, k))

    def reverse(self) -> Multivector:
        return Multivector(reversion(self))

    def even(self) -> Quaternion:
        return Quaternion(*even_part(self).tolist())

    def isclose(self, other, tol: float = DEFAULT_TOL) -> bool:
        return bool(np.all(np.abs(self._coeffs - np.asarray(other)) <= tol))

    def __repr__(self):
        terms = [f"{c:g}*{n}" for c, n in zip(self._coeffs.tolist(), BLADE_NAMES) if c != 0]
        return f"Multivector({' + '.join(terms) or '0'})"
