"""Quaternion and dual-number arithmetic plus homogeneous points.

Scalars are double precision floats throughout; homogeneous data is kept
unnormalized and only normalized on comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Quaternion:
    """Element w + x*i + y*j + z*k of the quaternion algebra (Hamilton product)."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @staticmethod
    def from_array(a) -> "Quaternion":
        a = np.asarray(a, dtype=float)
        return Quaternion(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    @staticmethod
    def pure(v) -> "Quaternion":
        v = np.asarray(v, dtype=float)
        return Quaternion(0.0, float(v[0]), float(v[1]), float(v[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def vec(self) -> np.ndarray:
        """Coefficients of the pure part as a 3-vector."""
        return np.array([self.x, self.y, self.z])

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)

    def norm2(self) -> float:
        return self.w**2 + self.x**2 + self.y**2 + self.z**2

    def is_pure(self, tol: float = DEFAULT_TOL) -> bool:
        n = self.norm()
        return n == 0.0 or abs(self.w) <= tol * max(n, 1.0)

    def dot(self, other: "Quaternion") -> float:
        """Euclidean inner product of the two coefficient 4-vectors."""
        return self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return quat_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return quat_mul(_coerce(other), self)

    def __truediv__(self, s: float):
        return Quaternion(self.w / s, self.x / s, self.y / s, self.z / s)

    def isclose(self, other: "Quaternion", tol: float = DEFAULT_TOL) -> bool:
        return bool(np.allclose(self.as_array(), other.as_array(), rtol=0.0, atol=tol))


def _coerce(v) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float)):
        return Quaternion(float(v))
    raise TypeError(f"cannot interpret {type(v).__name__} as Quaternion")


QUAT_ONE = Quaternion(1.0)
QUAT_I = Quaternion(0.0, 1.0, 0.0, 0.0)
QUAT_J = Quaternion(0.0, 0.0, 1.0, 0.0)
QUAT_K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product with i*j = k, j*k = i, k*i = j."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def quat_conj(a: Quaternion) -> Quaternion:
    """Conjugate: scalar part kept, pure part negated."""
    return a.conj()


def embed_point(p) -> Quaternion:
    """Embed a point (p0, p1, p2, p3) of E^4 as p0 + p1*i + p2*j + p3*k."""
    return Quaternion.from_array(p)


def extract_point(q: Quaternion) -> np.ndarray:
    """Inverse of :func:`embed_point`."""
    return q.as_array()


@dataclass(frozen=True)
class DualNumber:
    """Dual number a + eps*b with eps^2 = 0."""

    re: float
    eps: float = 0.0

    def __add__(self, other):
        other = _coerce_dual(other)
        return DualNumber(self.re + other.re, self.eps + other.eps)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_dual(other)
        return DualNumber(self.re - other.re, self.eps - other.eps)

    def __rsub__(self, other):
        return _coerce_dual(other) - self

    def __neg__(self):
        return DualNumber(-self.re, -self.eps)

    def __mul__(self, other):
        other = _coerce_dual(other)
        return dual_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_dual(other)
        if other.re == 0.0:
            raise ZeroDivisionError("dual number with zero real part has no inverse")
        re = self.re / other.re
        return DualNumber(re, (self.eps - re * other.eps) / other.re)

    def sqrt(self) -> "DualNumber":
        if self.re <= 0.0:
            raise GeometryError("dual square root needs a positive real part")
        r = math.sqrt(self.re)
        return DualNumber(r, self.eps / (2.0 * r))


def _coerce_dual(v) -> DualNumber:
    if isinstance(v, DualNumber):
        return v
    if isinstance(v, (int, float)):
        return DualNumber(float(v))
    raise TypeError(f"cannot interpret {type(v).__name__} as DualNumber")


def dual_mul(a: DualNumber, b: DualNumber) -> DualNumber:
    """(a + eps b)(c + eps d) = ac + eps(ad + bc)."""
    return DualNumber(a.re * b.re, a.re * b.eps + a.eps * b.re)


@dataclass(frozen=True)
class DualVector3:
    """Dual vector dir + eps*mom with 3-vector components."""

    dir: np.ndarray
    mom: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dir", _ro(np.asarray(self.dir, dtype=float).reshape(3)))
        object.__setattr__(self, "mom", _ro(np.asarray(self.mom, dtype=float).reshape(3)))

    def dual_dot(self, other: "DualVector3") -> DualNumber:
        """Dual inner product: re = <dir,dir'>, eps = <dir,mom'> + <mom,dir'>."""
        return DualNumber(
            float(np.dot(self.dir, other.dir)),
            float(np.dot(self.dir, other.mom) + np.dot(self.mom, other.dir)),
        )

    def scale(self, s: DualNumber) -> "DualVector3":
        return DualVector3(s.re * self.dir, s.re * self.mom + s.eps * self.dir)


def _ro(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class HomPoint:
    """Point of a projective space, stored as an unnormalized coordinate tuple."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float).reshape(-1)
        if not np.any(c):
            raise GeometryError("homogeneous point must have a nonzero coordinate")
        object.__setattr__(self, "coords", _ro(c))

    def __len__(self):
        return len(self.coords)

    def normalized(self) -> np.ndarray:
        return self.coords / np.linalg.norm(self.coords)


def _as_coords(p) -> np.ndarray:
    if isinstance(p, HomPoint):
        return p.coords
    return np.asarray(p, dtype=float).reshape(-1)


def proj_equal(p, q, tol: float = DEFAULT_TOL) -> bool:
    """Projective equality: all 2x2 minors of the stacked pair below tol.

    Both tuples are scaled to unit Euclidean norm first, so ``tol`` is
    an absolute threshold.
    """
    a, b = _as_coords(p), _as_coords(q)
    if a.shape != b.shape:
        return False
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise GeometryError("zero tuple is not a valid homogeneous point")
    a, b = a / na, b / nb
    minors = np.abs(np.outer(a, b) - np.outer(b, a))
    return bool(minors.max() <= tol)
