"""Cubic conoidal 2-surfaces of E^4 spanned by a segment between two skew lines.

The canonical configuration places the first line on the x2-axis inside
the hyperplane x0 = 0; the second line sits at height ``h``, its
projection crossing the x1-axis at offset ``n`` under angle ``alpha``.
All surface formulas are evaluated in that frame and moved by a placing
isometry.  Parameter convention: t = 1 is the first line, t = 0 the
second; t may be any real or +/-inf (the closure ruling).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .algebra import DEFAULT_TOL, Quaternion, proj_equal, quat_mul
from .errors import (DegenerateFitError, DegenerateLineError, GeometryError,
                     NonPureDirectionError, SliceCheckError, TangentSolveError)
from .lines4 import (E4Line, E4LineElement, e4_line_from_dir_point, element_point,
                     height_f0, pedal_point, project_pi)


@dataclass(frozen=True)
class Isometry4:
    """Direct isometry of E^4 fixing the x0-direction: diag(1, R) plus translation."""

    rot: np.ndarray
    trans: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.rot, dtype=float).reshape(3, 3)
        t = np.asarray(self.trans, dtype=float).reshape(4)
        if np.linalg.norm(R @ R.T - np.eye(3)) > 1e-7:
            raise GeometryError("rotation block must be orthogonal")
        if np.linalg.det(R) < 0:
            raise GeometryError("placing isometry must be direct (det +1)")
        R.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "rot", R)
        object.__setattr__(self, "trans", t)

    @staticmethod
    def identity() -> "Isometry4":
        return Isometry4(np.eye(3), np.zeros(4))

    def apply(self, p) -> np.ndarray:
        """Map canonical points (... , 4) to world points."""
        p = np.asarray(p, dtype=float)
        out = np.empty_like(p)
        out[..., 0] = p[..., 0] + self.trans[0]
        out[..., 1:] = p[..., 1:] @ self.rot.T + self.trans[1:]
        return out

    def apply_dir(self, v) -> np.ndarray:
        """Rotate direction vectors (no translation)."""
        v = np.asarray(v, dtype=float)
        out = np.empty_like(v)
        out[..., 0] = v[..., 0]
        out[..., 1:] = v[..., 1:] @ self.rot.T
        return out

    def invert(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        out = np.empty_like(p)
        out[..., 0] = p[..., 0] - self.trans[0]
        out[..., 1:] = (p[..., 1:] - self.trans[1:]) @ self.rot
        return out

    def invert_dir(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        out = np.empty_like(v)
        out[..., 0] = v[..., 0]
        out[..., 1:] = v[..., 1:] @ self.rot
        return out


@dataclass(frozen=True)
class GammaSurface:
    """Canonical invariants (h, n, alpha) plus the placing isometry."""

    h: float
    n: float
    alpha: float
    frame: Isometry4 = field(default_factory=Isometry4.identity)

    def __post_init__(self):
        if not (0.0 < self.alpha < math.pi) or math.sin(self.alpha) <= DEFAULT_TOL:
            raise GeometryError("alpha must lie in (0, pi) with sin(alpha) > tolerance")


SegmentTag = Literal["identical", "concurrent_pencil", "parallel_pencil",
                     "parallel_skew", "generic_skew"]


@dataclass(frozen=True)
class SegmentClass:
    """Case analysis of the segment between two lines (or line-elements)."""

    tag: SegmentTag
    vertex: Optional[np.ndarray] = None            # E^4 point for concurrent_pencil
    gamma: Optional[GammaSurface] = None           # canonical surface for generic_skew
    circle: Optional[tuple] = None                 # (center, radius) through V, P1, P2


# ---------------------------------------------------------------------------
# canonical-frame polynomials (coefficient arrays, low -> high in t)
# ---------------------------------------------------------------------------


def _t_polys(h: float, n: float, alpha: float):
    c, s = math.cos(alpha), math.sin(alpha)
    D = np.array([-1.0, -2.0 * (c - 1.0), 2.0 * (c - 1.0)])
    Ns0 = npoly.polymul([-1.0, 1.0], [h, h * c - n * s - h])
    Ns1 = npoly.polymul([-1.0, 1.0], [n, h * s + n * c - n])
    Nr2 = np.array([c, 1.0 - c])
    Nr3 = np.array([s, -s])
    return Ns0, Ns1, Nr2, Nr3, D


def gamma_striction(g: GammaSurface, t: float) -> np.ndarray:
    """Striction (= pedal) point of the ruling at parameter t, in world coordinates."""
    Ns0, Ns1, Nr2, Nr3, D = _t_polys(g.h, g.n, g.alpha)
    if math.isinf(t):
        p = np.array([Ns0[2] / D[2], Ns1[2] / D[2], 0.0, 0.0])
    else:
        d = npoly.polyval(t, D)
        p = np.array([npoly.polyval(t, Ns0) / d, npoly.polyval(t, Ns1) / d, 0.0, 0.0])
    return g.frame.apply(p)


def gamma_ruling_dir(g: GammaSurface, t: float) -> np.ndarray:
    """Direction of the ruling at parameter t (world, zero x0-component)."""
    Ns0, Ns1, Nr2, Nr3, D = _t_polys(g.h, g.n, g.alpha)
    if math.isinf(t):
        # limit of t * r(t): ratio of leading coefficients
        v = np.array([0.0, 0.0, Nr2[1] / D[2], Nr3[1] / D[2]])
    else:
        d = npoly.polyval(t, D)
        v = np.array([0.0, 0.0, npoly.polyval(t, Nr2) / d, npoly.polyval(t, Nr3) / d])
    return g.frame.apply_dir(v)


def gamma_point(g: GammaSurface, t: float, u: float) -> np.ndarray:
    """Surface point s(t) + u * r(t)."""
    return gamma_striction(g, t) + u * gamma_ruling_dir(g, t)


def strip_circle_point(g: GammaSurface, t: float, ell1: float, ell2: float) -> np.ndarray:
    """Point of the strip curve k(t) = s(t) + (t*ell1 + (1-t)*ell2) r(t)."""
    return gamma_striction(g, t) + (t * ell1 + (1.0 - t) * ell2) * gamma_ruling_dir(g, t)


def _implicit_terms(h, n, alpha, q):
    c, s = math.cos(alpha), math.sin(alpha)
    g0, g1, g2, g3 = q
    ta = (s * g1 * g2 * g2, s * g1 * g3 * g3, -s * h * g3 * g2, -s * n * g3 * g3,
          -c * n * g3 * g2, c * h * g3 * g3)
    tb = (s * h * g3 * g3, -s * n * g3 * g2, -s * g0 * g3 * g3, -s * g0 * g2 * g2,
          c * h * g3 * g2, c * n * g3 * g3)
    tc = (s * g0 * g0, -s * n * g1, s * g1 * g1, -s * h * g0, -c * n * g0, c * g1 * h)
    return ta, tb, tc


def _normalized_residuals(h, n, alpha, q) -> np.ndarray:
    # normalize by the largest monomial magnitude; the floor keeps the ratio
    # meaningful at deep coordinate coincidences where every monomial is
    # roundoff-level (e.g. points of the endpoint rulings)
    coef = max(1.0, abs(h), abs(n))
    qs = max(1.0, float(np.max(np.abs(q))))
    out = []
    for terms, deg in zip(_implicit_terms(h, n, alpha, q), (3, 3, 2)):
        scale = max(max(abs(x) for x in terms), 1e-6 * coef * qs**deg)
        out.append(sum(terms) / scale)
    return np.array(out)


def gamma_implicit(g: GammaSurface, p) -> np.ndarray:
    """Residuals of the three implicit equations at a world point.

    Each residual is normalized by the largest monomial magnitude of its
    equation, so membership thresholds are scale free.
    """
    q = g.frame.invert(np.asarray(p, dtype=float).reshape(4))
    return _normalized_residuals(g.h, g.n, g.alpha, q)


def _implicit_homogeneous(h, n, alpha, v5):
    """Projective residual scale for the slice check: (a, b) cubic, (c) quadratic."""
    g0, g1, g2, g3, v = v5
    c, s = math.cos(alpha), math.sin(alpha)
    a = s * (g1 * g2**2 + g1 * g3**2 - h * g3 * g2 * v - n * g3**2 * v) \
        - g3 * c * (n * g2 - h * g3) * v
    b = s * (h * g3**2 * v - n * g3 * g2 * v - g0 * g3**2 - g0 * g2**2) \
        + g3 * c * (h * g2 + n * g3) * v
    cc = s * (g0**2 - n * g1 * v + g1**2 - h * g0 * v) - c * (n * g0 - g1 * h) * v
    return np.array([a, b, cc])


# ---------------------------------------------------------------------------
# classification and canonical form
# ---------------------------------------------------------------------------


def _carrier(x) -> E4Line:
    return x.line if isinstance(x, E4LineElement) else x


def _line_points(g: E4Line):
    F = pedal_point(g).as_array()
    d = g.L.vec / np.linalg.norm(g.L.vec)
    return F, np.concatenate([[0.0], d])


def circumcircle(p1, p2, p3):
    """Center and radius of the circle through three points (any dimension)."""
    p1, p2, p3 = (np.asarray(p, dtype=float) for p in (p1, p2, p3))
    u = p2 - p1
    v = p3 - p1
    uu, vv, uv = u @ u, v @ v, u @ v
    det = uu * vv - uv * uv
    if det <= 1e-14 * max(uu, vv, 1e-300) ** 2:
        raise DegenerateFitError("points are collinear; no circumscribed circle")
    # center = p1 + x*u + y*v with <center-p1, u> = uu/2 and <center-p1, v> = vv/2
    x = 0.5 * vv * (uu - uv) / det
    y = 0.5 * uu * (vv - uv) / det
    center = p1 + x * u + y * v
    return center, float(np.linalg.norm(center - p1))


def classify_segment(a, b, tol: float = DEFAULT_TOL) -> SegmentClass:
    """Case analysis of two lines (or line-elements) with directions orthogonal to x0."""
    la, lb = _carrier(a), _carrier(b)
    if not (la.in_m() and lb.in_m()):
        raise NonPureDirectionError("segment classification requires lines orthogonal to x0")
    if proj_equal(la.as_p5(), lb.as_p5(), tol=1e-9):
        return SegmentClass("identical")
    da, db = la.L.vec, lb.L.vec
    da = da / np.linalg.norm(da)
    db = db / np.linalg.norm(db)
    Fa, ea = _line_points(la)
    Fb, eb = _line_points(lb)
    if np.linalg.norm(np.cross(da, db)) <= 1e-9:
        # equal directions span a plane; the segment is a pencil of parallels
        return SegmentClass("parallel_pencil")
    # closest points: minimize |Fa + t1*ea - (Fb + t2*eb)|
    M = np.stack([ea, -eb], axis=1)
    t12, *_ = np.linalg.lstsq(M, Fb - Fa, rcond=None)
    qa = Fa + t12[0] * ea
    qb = Fb + t12[1] * eb
    gap = np.linalg.norm(qa - qb)
    scale = max(1.0, np.linalg.norm(Fa), np.linalg.norm(Fb))
    if gap <= 1e-9 * scale:
        vertex = 0.5 * (qa + qb)
        circ = None
        if isinstance(a, E4LineElement) and isinstance(b, E4LineElement):
            p1 = element_point(a).as_array()
            p2 = element_point(b).as_array()
            try:
                circ = circumcircle(vertex, p1, p2)
            except DegenerateFitError:
                circ = None
        return SegmentClass("concurrent_pencil", vertex=vertex, circle=circ)
    gamma = canonicalize_skew_pair(la, lb)
    return SegmentClass("generic_skew", gamma=gamma)


def canonicalize_skew_pair(a: E4Line, b: E4Line) -> GammaSurface:
    """Canonical parameters (h, n, alpha) and placing frame of a skew pair.

    The frame maps the canonical first line (x2-axis in x0 = 0) to ``a``
    and the canonical second line to ``b``.  The leftover reflection
    gauge is fixed by choosing n >= 0.
    """
    if not (a.in_m() and b.in_m()):
        raise NonPureDirectionError("canonical form requires lines orthogonal to x0")
    h1, h2 = height_f0(a), height_f0(b)
    pa, _ = project_pi(a)
    pb, _ = project_pi(b)
    da = pa.dir / np.linalg.norm(pa.dir)
    db = pb.dir / np.linalg.norm(pb.dir)
    cn = np.cross(da, db)
    if np.linalg.norm(cn) <= 1e-9:
        raise DegenerateLineError("projected directions are parallel; no canonical form")
    e1 = cn / np.linalg.norm(cn)
    # feet of the common normal of the two projected lines
    fa = pa.point_closest_to_origin()
    fb = pb.point_closest_to_origin()
    M = np.stack([da, -db], axis=1)
    t12, *_ = np.linalg.lstsq(M, fb - fa, rcond=None)
    foot1 = fa + t12[0] * da
    foot2 = fb + t12[1] * db
    n = float(np.dot(foot2 - foot1, e1))
    e2 = da
    e3 = np.cross(e1, e2)
    sa, ca = float(np.dot(db, e3)), float(np.dot(db, e2))
    if sa < 0:
        sa, ca = -sa, -ca
    alpha = math.atan2(sa, ca)
    if n < -1e-12:
        # flip the common-normal orientation; alpha reflects accordingly
        n, alpha = -n, math.pi - alpha
        e1 = -e1
        e3 = np.cross(e1, e2)
    rot = np.stack([e1, e2, e3], axis=1)
    trans = np.concatenate([[h1], foot1])
    return GammaSurface(h2 - h1, max(n, 0.0), alpha, Isometry4(rot, trans))


def segment_surface_residuals(a: E4Line, b: E4Line, points) -> np.ndarray:
    """Implicit membership residuals of world points in the surface traced by
    linear blends of the coordinate pairs of ``a`` and ``b``.

    That interpolation surface is the x1-mirror of the canonical-form
    surface with parameters (h, -n, alpha); the residuals are evaluated
    through that correction.
    """
    g = canonicalize_skew_pair(a, b)
    q = g.frame.invert(np.atleast_2d(np.asarray(points, dtype=float)))
    q = q.copy()
    q[..., 1] *= -1.0
    return np.asarray([np.abs(_normalized_residuals(g.h, -g.n, g.alpha, row))
                       for row in q])


# ---------------------------------------------------------------------------
# degree of the surface: intersection count with the test plane
# ---------------------------------------------------------------------------


def degree_slice_check(g: GammaSurface, cluster: float = 1e-6):
    """Intersect the projective closure of the surface with the plane
    v0 = v2 + v3 + v, v1 = v2 - v3 - v and count solutions.

    Returns ``(n_real, n_total)`` counted with multiplicity; the surface
    is cubic, so a generic slice yields one real and two conjugate
    complex points.  Every intersection point is verified against the
    homogenized implicit equations.
    """
    h, n, alpha = g.h, g.n, g.alpha
    Ns0, Ns1, Nr2, Nr3, D = _t_polys(h, n, alpha)

    def pad(coef, length):
        coef = np.asarray(coef, dtype=float)
        return np.concatenate([coef, np.zeros(length - len(coef))])

    # homogenize every polynomial at its structural degree so the closure
    # ruling (t at infinity) evaluates consistently
    Ns0, Ns1, D = pad(Ns0, 3), pad(Ns1, 3), pad(D, 3)
    Nr2, Nr3 = pad(Nr2, 2), pad(Nr3, 2)
    # plane conditions on (Ns0 : Ns1 : u Nr2 : u Nr3 : D); eliminating u gives a cubic
    E = npoly.polysub(npoly.polymul(npoly.polysub(Ns0, D), npoly.polysub(Nr2, Nr3)),
                      npoly.polymul(npoly.polyadd(Ns1, D), npoly.polyadd(Nr2, Nr3)))
    E = np.asarray(E, dtype=float)
    # pad to the structural degree 3: exact cancellation of the cubic term moves
    # one intersection to the closure ruling at t = inf
    if len(E) < 4:
        E = np.concatenate([E, np.zeros(4 - len(E))])
    emax = np.max(np.abs(E))
    if emax < 1e-14:
        raise SliceCheckError("elimination polynomial vanished; slice is degenerate")
    E = E / emax
    deg = len(E) - 1
    # strip numerically-zero leading coefficients: each drop is a root at t = inf
    n_inf = 0
    while deg > 0 and abs(E[deg]) < 1e-10:
        deg -= 1
        n_inf += 1
    if deg < 1:
        raise SliceCheckError("elimination polynomial degenerated to a constant")
    roots = list(np.roots(E[deg::-1]))
    # homogeneous parameter pairs (tau, sigma): finite roots and roots at infinity
    params = [(r, 1.0) for r in roots] + [(1.0, 0.0)] * n_inf

    def hval(coef, tau, sigma):
        d = len(coef) - 1
        return sum(coef[i] * tau**i * sigma**(d - i) for i in range(d + 1))

    pts = []
    for tau, sigma in params:
        s0 = hval(Ns0, tau, sigma)
        s1 = hval(Ns1, tau, sigma)
        r2 = hval(Nr2, tau, sigma)
        r3 = hval(Nr3, tau, sigma)
        dd = hval(D, tau, sigma)
        w = r2 + r3
        if abs(w) > 1e-9:
            v5 = np.array([w * s0, w * s1, (s0 - dd) * r2, (s0 - dd) * r3, w * dd])
        else:
            w2 = r2 - r3
            if abs(w2) < 1e-9:
                raise SliceCheckError("ruling direction degenerated during the slice")
            v5 = np.array([w2 * s0, w2 * s1, (s1 + dd) * r2, (s1 + dd) * r3, w2 * dd])
        nv = np.linalg.norm(v5)
        if nv < 1e-12:
            raise SliceCheckError("intersection point degenerated to the zero tuple")
        v5 = v5 / nv
        res = np.max(np.abs(_implicit_homogeneous(h, n, alpha, v5)))
        if res > 1e-7:
            raise SliceCheckError(f"slice point fails the implicit equations (residual {res:.2e})")
        pts.append((tau, sigma))
    n_real = sum(1 for tau, sigma in pts
                 if abs(np.imag(tau)) <= cluster and abs(np.imag(sigma)) <= cluster)
    return n_real, len(pts)


# ---------------------------------------------------------------------------
# circle / conic fitting verifiers
# ---------------------------------------------------------------------------


def fit_circle_3d(points):
    """Least-squares plane + circle fit for points in R^d (d >= 2).

    Returns ``(center, radius, basis, residual)`` where residual is the
    largest distance deviation including out-of-plane offsets.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or len(P) < 5:
        raise DegenerateFitError("need at least 5 points")
    c0 = P.mean(axis=0)
    Q = P - c0
    _, sv, Vt = np.linalg.svd(Q, full_matrices=False)
    if sv[1] <= 1e-12 * max(sv[0], 1e-300):
        raise DegenerateFitError("points are collinear; no circle fit")
    B = Vt[:2]
    xy = Q @ B.T
    off = Q - xy @ B
    A = np.column_stack([2.0 * xy, np.ones(len(xy))])
    rhs = (xy**2).sum(axis=1)
    sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    cen2, c2 = sol[:2], sol[2]
    r2 = c2 + cen2 @ cen2
    if r2 <= 0:
        raise DegenerateFitError("degenerate circle fit")
    radius = math.sqrt(r2)
    inplane = np.abs(np.linalg.norm(xy - cen2, axis=1) - radius)
    residual = float(np.max(np.hypot(inplane, np.linalg.norm(off, axis=1))))
    center = c0 + cen2 @ B
    return center, radius, B, residual


def fit_ellipse(points):
    """Least-squares plane + conic fit; returns (residual, is_ellipse).

    The residual is the largest first-order geometric (Sampson) distance,
    combined with out-of-plane offsets.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or len(P) < 6:
        raise DegenerateFitError("need at least 6 points")
    c0 = P.mean(axis=0)
    Q = P - c0
    _, sv, Vt = np.linalg.svd(Q, full_matrices=False)
    if sv[1] <= 1e-12 * max(sv[0], 1e-300):
        raise DegenerateFitError("points are collinear; no conic fit")
    B = Vt[:2]
    xy = Q @ B.T
    off = np.linalg.norm(Q - xy @ B, axis=1)
    scale = np.abs(xy).max()
    xy = xy / scale
    x, y = xy[:, 0], xy[:, 1]
    M = np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    _, _, Vt2 = np.linalg.svd(M, full_matrices=False)
    coef = Vt2[-1]
    A, Bc, C, Dc, Ec, F = coef
    vals = M @ coef
    gx = 2 * A * x + Bc * y + Dc
    gy = Bc * x + 2 * C * y + Ec
    grad = np.hypot(gx, gy)
    grad = np.where(grad < 1e-14, 1e-14, grad)
    sampson = np.abs(vals) / grad * scale
    residual = float(np.max(np.hypot(sampson, off)))
    is_ellipse = bool(Bc * Bc - 4 * A * C < 0)
    return residual, is_ellipse


# ---------------------------------------------------------------------------
# LN property: unique tangent-plane parameters for a given normal direction
# ---------------------------------------------------------------------------


def _ratio_derivs(num, den, t):
    """Value, first and second derivative of num/den at t."""
    N, Np, Npp = (npoly.polyval(t, num), npoly.polyval(t, npoly.polyder(num)),
                  npoly.polyval(t, npoly.polyder(num, 2)))
    Dv, Dp, Dpp = (npoly.polyval(t, den), npoly.polyval(t, npoly.polyder(den)),
                   npoly.polyval(t, npoly.polyder(den, 2)))
    f = N / Dv
    fp = (Np * Dv - N * Dp) / Dv**2
    fpp = (Npp * Dv - N * Dpp) / Dv**2 - 2.0 * Dp * (Np * Dv - N * Dp) / Dv**3
    return f, fp, fpp


def _canonical_partials(h, n, alpha, t, u):
    Ns0, Ns1, Nr2, Nr3, D = _t_polys(h, n, alpha)
    s0, s0p, s0pp = _ratio_derivs(Ns0, D, t)
    s1, s1p, s1pp = _ratio_derivs(Ns1, D, t)
    r2, r2p, r2pp = _ratio_derivs(Nr2, D, t)
    r3, r3p, r3pp = _ratio_derivs(Nr3, D, t)
    g_t = np.array([s0p, s1p, u * r2p, u * r3p])
    g_u = np.array([0.0, 0.0, r2, r3])
    g_tt = np.array([s0pp, s1pp, u * r2pp, u * r3pp])
    g_tu = np.array([0.0, 0.0, r2p, r3p])
    return g_t, g_u, g_tt, g_tu


def ln_tangent_params(g: GammaSurface, w, tol: float = 1e-11):
    """Parameters (t, u) whose tangent plane is orthogonal to the direction w.

    Solved by Newton iteration from a 16-point multi-start grid; exactly
    one root must survive deduplication, otherwise the input is flagged
    as non-generic.
    """
    w = np.asarray(w, dtype=float).reshape(4)
    if np.linalg.norm(w) == 0.0:
        raise TangentSolveError("zero normal direction")
    wc = g.frame.invert_dir(w)
    wc = wc / np.linalg.norm(wc)
    roots = []
    starts = [(t0, u0) for t0 in (-2.0, -0.5, 0.5, 2.0) for u0 in (-2.0, -0.5, 0.5, 2.0)]
    for t0, u0 in starts:
        t, u = t0, u0
        ok = False
        for _ in range(60):
            g_t, g_u, g_tt, g_tu = _canonical_partials(g.h, g.n, g.alpha, t, u)
            F = np.array([wc @ g_t, wc @ g_u])
            J = np.array([[wc @ g_tt, wc @ g_tu], [wc @ g_tu, 0.0]])
            if abs(np.linalg.det(J)) < 1e-14:
                break
            step = np.linalg.solve(J, F)
            t, u = t - step[0], u - step[1]
            if not (np.isfinite(t) and np.isfinite(u)):
                break
            if np.linalg.norm(step) < 1e-13 * max(1.0, abs(t), abs(u)):
                ok = True
                break
        if not ok:
            continue
        g_t, g_u, *_ = _canonical_partials(g.h, g.n, g.alpha, t, u)
        if max(abs(wc @ g_t), abs(wc @ g_u)) > tol:
            continue
        if not any(abs(t - rt) + abs(u - ru) < 1e-7 * max(1.0, abs(t), abs(u))
                   for rt, ru in roots):
            roots.append((t, u))
    if len(roots) != 1:
        raise TangentSolveError(
            f"normal direction is non-generic: {len(roots)} tangent solutions found")
    return roots[0]


# ---------------------------------------------------------------------------
# line-symmetric motion
# ---------------------------------------------------------------------------


def reflect_displacement(l: Quaternion, m: Quaternion, P: Quaternion) -> Quaternion:
    """Displacement P -> l o P o conj(l) - 2 l o conj(m) for a unit carrier direction.

    The pair (l, m) is homogeneous: it is rescaled so that l is a unit
    quaternion before evaluation.
    """
    nl = l.norm()
    if nl == 0.0:
        raise GeometryError("carrier direction must be nonzero")
    lu, mu_ = l / nl, m / nl
    return quat_mul(quat_mul(lu, P), lu.conj()) - quat_mul(lu, mu_.conj()) * 2.0


def line_symmetric_displacement(g: GammaSurface, t: float, P: Quaternion) -> Quaternion:
    """Image of P under the displacement attached to the ruling at parameter t."""
    s = gamma_striction(g, t)
    r = gamma_ruling_dir(g, t)
    L = Quaternion.pure(r[1:])
    line = e4_line_from_dir_point(L, Quaternion.from_array(s))
    return reflect_displacement(line.L, line.m, P)
