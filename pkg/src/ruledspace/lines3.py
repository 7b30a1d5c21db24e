"""Lines and line-elements of E^3 in Pluecker coordinates.

Coordinate ordering of every 6-tuple is (l01, l02, l03, l23, l31, l12),
split into the direction block ``dir`` = (l01, l02, l03) and the moment
block ``mom`` = (l23, l31, l12).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_TOL, HomPoint, _as_coords, _ro
from .errors import DegenerateLineError, GeometryError, InvalidDirectionError


def _vec3(v) -> np.ndarray:
    return np.asarray(v, dtype=float).reshape(3)


@dataclass(frozen=True)
class PluckerLine:
    """Line of E^3: homogeneous pair (dir, mom) with <dir, mom> = 0 and dir != 0."""

    dir: np.ndarray
    mom: np.ndarray

    def __post_init__(self):
        d, m = _vec3(self.dir), _vec3(self.mom)
        scale = max(np.linalg.norm(d), np.linalg.norm(m))
        if np.linalg.norm(d) <= DEFAULT_TOL * max(scale, 1.0):
            raise InvalidDirectionError("line of E^3 needs a nonzero direction block")
        if scale > 0 and abs(np.dot(d, m)) / scale**2 > 1e-7:
            raise GeometryError("Pluecker condition violated: <dir, mom> != 0")
        object.__setattr__(self, "dir", _ro(d))
        object.__setattr__(self, "mom", _ro(m))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.dir, self.mom])

    def point_closest_to_origin(self) -> np.ndarray:
        """Pedal point: (dir x mom) / <dir, dir>."""
        return np.cross(self.dir, self.mom) / np.dot(self.dir, self.dir)

    def contains_point(self, p, tol: float = 1e-7) -> bool:
        p = _vec3(p)
        scale = max(1.0, np.linalg.norm(p)) * np.linalg.norm(self.dir)
        return bool(np.linalg.norm(np.cross(p, self.dir) - self.mom) / scale <= tol)


@dataclass(frozen=True)
class LineElement3:
    """Line-element of E^3: homogeneous 7-tuple (dir, mom, ell), ell = <p, dir>."""

    dir: np.ndarray
    mom: np.ndarray
    ell: float

    def __post_init__(self):
        d, m = _vec3(self.dir), _vec3(self.mom)
        scale = max(np.linalg.norm(d), np.linalg.norm(m), abs(self.ell))
        if np.linalg.norm(d) <= DEFAULT_TOL * max(scale, 1.0):
            raise InvalidDirectionError("line-element of E^3 needs a nonzero direction block")
        if scale > 0 and abs(np.dot(d, m)) / scale**2 > 1e-7:
            raise GeometryError("line-element is not on the cone: <dir, mom> != 0")
        object.__setattr__(self, "dir", _ro(d))
        object.__setattr__(self, "mom", _ro(m))
        object.__setattr__(self, "ell", float(self.ell))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.dir, self.mom, [self.ell]])

    @property
    def line(self) -> PluckerLine:
        return PluckerLine(self.dir, self.mom)


@dataclass(frozen=True)
class LinearComplex:
    """Linear complex of lines (6-tuple) or of line-elements (with ``ell``)."""

    dir: np.ndarray
    mom: np.ndarray
    ell: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "dir", _ro(_vec3(self.dir)))
        object.__setattr__(self, "mom", _ro(_vec3(self.mom)))

    def as_array(self) -> np.ndarray:
        tail = [] if self.ell is None else [self.ell]
        return np.concatenate([self.dir, self.mom, tail])


def plucker_from_points(p, q) -> PluckerLine:
    """Line spanned by two points of P^3 via the 2x2 minors l_ij = p_i q_j - p_j q_i."""
    a, b = _as_coords(p), _as_coords(q)
    if a.shape != (4,) or b.shape != (4,):
        raise GeometryError("expected homogeneous points of P^3 (4-tuples)")
    minors = np.outer(a, b) - np.outer(b, a)  # antisymmetric matrix a_i b_j - a_j b_i
    d = np.array([minors[0, 1], minors[0, 2], minors[0, 3]])
    m = np.array([minors[2, 3], minors[3, 1], minors[1, 2]])
    scale = max(np.linalg.norm(a) * np.linalg.norm(b), 1e-300)
    if max(np.linalg.norm(d), np.linalg.norm(m)) <= 1e-12 * scale:
        raise DegenerateLineError("points are projectively equal; they span no line")
    if np.linalg.norm(d) <= 1e-12 * scale:
        raise InvalidDirectionError("spanned line is ideal (dir block vanishes)")
    return PluckerLine(d, m)


def line_from_point_dir(p, l) -> PluckerLine:
    """Line through point p with direction l; moment is p x l."""
    p, l = _vec3(p), _vec3(l)
    if not np.any(l):
        raise InvalidDirectionError("direction must be nonzero")
    return PluckerLine(l, np.cross(p, l))


def line_element_from(p, l) -> LineElement3:
    """Line-element (line through p with direction l, marked point p)."""
    p, l = _vec3(p), _vec3(l)
    if not np.any(l):
        raise InvalidDirectionError("direction must be nonzero")
    return LineElement3(l, np.cross(p, l), float(np.dot(p, l)))


def line_element_point(e: LineElement3) -> np.ndarray:
    """Marked point of a line-element: (dir x mom + ell*dir) / <dir, dir>."""
    d = np.asarray(e.dir)
    return (np.cross(d, e.mom) + e.ell * d) / np.dot(d, d)


def plucker_condition_residual(x) -> float:
    """l01*l23 + l02*l31 + l03*l12 evaluated on the unit-norm representative."""
    c = _as_coords(x)
    if c.shape != (6,):
        raise GeometryError("expected a 6-tuple")
    n = np.linalg.norm(c)
    if n == 0.0:
        raise GeometryError("zero tuple")
    c = c / n
    return float(np.dot(c[:3], c[3:]))


def complex_contains_line(c: LinearComplex, l: PluckerLine, tol: float = DEFAULT_TOL) -> bool:
    """True iff <c_dir, l_mom> + <c_mom, l_dir> = 0 on unit-norm representatives."""
    ca = np.concatenate([c.dir, c.mom])
    la = l.as_array()
    r = np.dot(c.dir, l.mom) + np.dot(c.mom, l.dir)
    return bool(abs(r) / (np.linalg.norm(ca) * np.linalg.norm(la)) <= tol)


def complex_contains_line_element(c: LinearComplex, e: LineElement3,
                                  tol: float = DEFAULT_TOL) -> bool:
    """True iff <c_dir, e_mom> + <c_mom, e_dir> + c_ell*e_ell = 0 (normalized)."""
    cell = 0.0 if c.ell is None else c.ell
    ca = np.concatenate([c.dir, c.mom, [cell]])
    ea = e.as_array()
    r = np.dot(c.dir, e.mom) + np.dot(c.mom, e.dir) + cell * e.ell
    return bool(abs(r) / (np.linalg.norm(ca) * np.linalg.norm(ea)) <= tol)


def pole_of_hyperplane(h) -> HomPoint:
    """Pole of a hyperplane of P^5 with respect to the Pluecker quadric.

    Hyperplane coefficients are given in point-coordinate order
    (l01, l02, l03, l23, l31, l12); the polarity swaps the two blocks.
    """
    c = _as_coords(h)
    if c.shape != (6,):
        raise GeometryError("expected 6 hyperplane coefficients")
    if not np.any(c):
        raise GeometryError("zero tuple is not a hyperplane")
    return HomPoint(np.concatenate([c[3:], c[:3]]))
