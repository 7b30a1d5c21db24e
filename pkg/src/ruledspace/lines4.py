"""Lines and line-elements of E^4 orthogonal to the x0-direction.

A line is stored as the homogeneous quaternion pair (L, m) with
m = conj(L) o F, where F is the pedal point of the line with respect to
the origin.  For directions orthogonal to x0 (pure L) the pair, read
componentwise, lives in P^5; appending the line-element scalar gives P^6.
The height of such a line above E^3 is the x0-coordinate of its pedal
point and is computed by :func:`height_f0`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .algebra import (DEFAULT_TOL, DualNumber, DualVector3, HomPoint,
                      Quaternion, _as_coords, quat_mul)
from .errors import (GeneratorSpaceError, GeometryError, InvalidDirectionError,
                     NonPureDirectionError)
from .lines3 import LineElement3, PluckerLine

# dir-block-to-full-norm ratio below which mu is refused outright
GENERATOR_HARD = 1e-10
# ...and below which a result is still produced but flagged
GENERATOR_SOFT = 1e-6


class NearGeneratorWarning(UserWarning):
    """Input is numerically close to the generator space; fiber direction degenerates."""


@dataclass(frozen=True)
class E4Line:
    """Line of E^4 in homogeneous minimal coordinates (L, m)."""

    L: Quaternion
    m: Quaternion

    def __post_init__(self):
        if self.L.norm() == 0.0:
            raise InvalidDirectionError("direction quaternion must be nonzero")
        scale = max(self.L.norm(), self.m.norm(), 1.0)
        if abs(self.m.w) > 1e-7 * scale:
            raise GeometryError("moment quaternion must be pure")

    def in_m(self, tol: float = DEFAULT_TOL) -> bool:
        """Member of the set of lines orthogonal to x0 (pure direction)."""
        return self.L.is_pure(tol)

    def as_p5(self) -> np.ndarray:
        """(dir, mom) 6-tuple for lines with pure direction."""
        _require_pure(self.L)
        return np.concatenate([self.L.vec, self.m.vec])

    @staticmethod
    def from_p5(c) -> "E4Line":
        c = _as_coords(c)
        return E4Line(Quaternion.pure(c[:3]), Quaternion.pure(c[3:6]))


@dataclass(frozen=True)
class E4LineElement:
    """Line-element of E^4: direction L and combined scalar+moment me = ell + m."""

    L: Quaternion
    me: Quaternion

    def __post_init__(self):
        if self.L.norm() == 0.0:
            raise InvalidDirectionError("direction quaternion must be nonzero")

    @property
    def ell(self) -> float:
        return self.me.w

    @property
    def m(self) -> Quaternion:
        return Quaternion.pure(self.me.vec)

    @property
    def line(self) -> E4Line:
        return E4Line(self.L, self.m)

    def in_n(self, tol: float = DEFAULT_TOL) -> bool:
        return self.L.is_pure(tol)

    def as_p6(self) -> np.ndarray:
        _require_pure(self.L)
        return np.concatenate([self.L.vec, self.me.vec, [self.me.w]])

    @staticmethod
    def from_p6(c) -> "E4LineElement":
        c = _as_coords(c)
        return E4LineElement(Quaternion.pure(c[:3]),
                             Quaternion(float(c[6]), *c[3:6]))


@dataclass(frozen=True)
class Spear(DualVector3):
    """Oriented line of E^3 as a dual unit vector."""

    def __post_init__(self):
        super().__post_init__()
        if abs(np.dot(self.dir, self.dir) - 1.0) > 1e-7:
            raise GeometryError("spear direction must be a unit vector")
        if abs(np.dot(self.dir, self.mom)) > 1e-7:
            raise GeometryError("spear must satisfy the Pluecker condition")


def _require_pure(L: Quaternion, tol: float = DEFAULT_TOL):
    if not L.is_pure(tol):
        raise NonPureDirectionError("operation requires a direction orthogonal to x0")


def e4_line_from_dir_point(L: Quaternion, P: Quaternion) -> E4Line:
    """Line through point P with direction L.

    The pedal point is F = P - (<P,L>/<L,L>) L; the moment is conj(L) o F.
    """
    if L.norm() == 0.0:
        raise InvalidDirectionError("direction quaternion must be nonzero")
    lam = P.dot(L) / L.norm2()
    F = P - L * lam
    return E4Line(L, quat_mul(L.conj(), F))


def e4_element_from_dir_point(L: Quaternion, P: Quaternion) -> E4LineElement:
    """Line-element with carrier through P, direction L and marked point P."""
    g = e4_line_from_dir_point(L, P)
    ell = P.dot(Quaternion(0.0, L.x, L.y, L.z))  # <p, l> ignores any x0 part of L
    return E4LineElement(L, Quaternion(ell, g.m.x, g.m.y, g.m.z))


def pedal_point(g: E4Line) -> Quaternion:
    """Point of the line closest to the origin: L o m / (L o conj(L))."""
    return quat_mul(g.L, g.m) / g.L.norm2()


def element_point(e: E4LineElement) -> Quaternion:
    """Marked point of a line-element of N: pedal shifted by ell along the unit direction."""
    _require_pure(e.L)
    F = pedal_point(e.line)
    return F + e.L * (e.ell / e.L.norm2())


def height_f0(g: E4Line | E4LineElement) -> float:
    """x0-coordinate of the pedal point: (1/2)(l o m + m o l) / (l o conj(l))."""
    L = g.L
    _require_pure(L)
    m = g.m
    num = quat_mul(L, m) + quat_mul(m, L)
    return 0.5 * num.w / L.norm2()


def mu(c, tol_hard: float = GENERATOR_HARD, tol_soft: float = GENERATOR_SOFT) -> HomPoint:
    """Project a point of P^5 onto the Pluecker quadric along its fiber.

    (c, cbar) maps to (c, cbar - (<c,cbar>/<c,c>) c), the axis of the
    instantaneous screw motion attached to the linear complex c.
    """
    a = _as_coords(c)
    if a.shape != (6,):
        raise GeometryError("expected a 6-tuple of P^5")
    d, m = a[:3], a[3:]
    full = np.linalg.norm(a)
    nd = np.linalg.norm(d)
    if full == 0.0:
        raise GeometryError("zero tuple")
    if nd <= tol_hard * full:
        raise GeneratorSpaceError("point lies in the generator space (dir block vanishes)")
    if nd <= tol_soft * full:
        warnings.warn("projection is ill-conditioned near the generator space",
                      NearGeneratorWarning, stacklevel=2)
    mbar = m - (np.dot(d, m) / np.dot(d, d)) * d
    return HomPoint(np.concatenate([d, mbar]))


def mu_line(g: E4Line) -> E4Line:
    """Quaternionic form of :func:`mu`: (l, m) -> (l, m + f0 * l)."""
    _require_pure(g.L)
    f0 = height_f0(g)
    return E4Line(g.L, g.m + g.L * f0)


def nu(c, **kw) -> HomPoint:
    """Extension of mu to P^6: project the first six coordinates, keep the seventh."""
    a = _as_coords(c)
    if a.shape != (7,):
        raise GeometryError("expected a 7-tuple of P^6")
    img = mu(a[:6], **kw)
    return HomPoint(np.concatenate([img.coords, a[6:]]))


def nu_element(e: E4LineElement) -> E4LineElement:
    """Quaternionic form of :func:`nu`."""
    _require_pure(e.L)
    f0 = height_f0(e)
    m2 = e.m + e.L * f0
    return E4LineElement(e.L, Quaternion(e.ell, m2.x, m2.y, m2.z))


def fiber(c) -> tuple[HomPoint, HomPoint]:
    """Two points spanning the fiber line of the projection through c.

    For a 6-tuple (c, cbar) the fiber meets the generator space in
    (o, c); for a 7-tuple (c, cbar, ell) in (o, c, 0).
    """
    a = _as_coords(c)
    if a.shape == (6,):
        d = a[:3]
        if not np.any(d):
            raise GeneratorSpaceError("fiber undefined on the generator space")
        return HomPoint(a), HomPoint(np.concatenate([np.zeros(3), d]))
    if a.shape == (7,):
        d = a[:3]
        if not np.any(d):
            raise GeneratorSpaceError("fiber undefined on the generator space")
        return HomPoint(a), HomPoint(np.concatenate([np.zeros(3), d, [0.0]]))
    raise GeometryError("expected a 6- or 7-tuple")


def project_pi(g: E4Line | E4LineElement) -> tuple[PluckerLine | LineElement3, float]:
    """Orthogonal projection onto E^3 with the dropped x0-coordinate as label."""
    if isinstance(g, E4LineElement):
        _require_pure(g.L)
        h = height_f0(g)
        img = nu_element(g)
        return LineElement3(img.L.vec, img.m.vec, img.ell), h
    _require_pure(g.L)
    h = height_f0(g)
    img = mu_line(g)
    return PluckerLine(img.L.vec, img.m.vec), h


def theta_back_projection(c) -> np.ndarray:
    """Projection followed by normalization onto M^4: <l,l> = 1, <l,lbar> = 0."""
    img = mu(c).coords
    d = img[:3]
    return img / np.linalg.norm(d)


def spear_normalize(v: DualVector3) -> Spear:
    """Divide a dual vector by the dual square root of its dual inner square."""
    q = v.dual_dot(v)
    if q.re <= 0.0:
        raise GeometryError("dual vector with nonpositive real square cannot be normalized")
    inv = DualNumber(1.0) / q.sqrt()
    w = v.scale(inv)
    return Spear(w.dir, w.mom)


def spear_from_line(l: PluckerLine) -> Spear:
    """Forget orientation issues: normalize a line to one of its two spears."""
    return spear_normalize(DualVector3(l.dir, l.mom))


def line_from_spear(s: Spear) -> PluckerLine:
    return PluckerLine(s.dir, s.mom)


def lift_line(l: PluckerLine, height: float) -> E4Line:
    """Line of M with projection l and pedal height x0 = height: (l, lbar - height*l)."""
    return E4Line(Quaternion.pure(l.dir), Quaternion.pure(l.mom - height * l.dir))


def lift_element(e: LineElement3, height: float) -> E4LineElement:
    """Line-element of N over e at the given height."""
    m = e.mom - height * e.dir
    return E4LineElement(Quaternion.pure(e.dir), Quaternion(e.ell, *m))
