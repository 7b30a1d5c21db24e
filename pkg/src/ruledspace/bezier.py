"""Projective De Casteljau evaluation of ruled surfaces, strips and patches.

Control data are homogeneous points of P^5 (lines), P^6 (line-elements)
or P^7 (two boundary scalars per ruling).  Weights are never given
explicitly: each Farin point fixes the ratio of its two neighbouring
control weights.  Evaluated curve points are pushed to the Pluecker
quadric (resp. the cone over it) and read off as lines of E^3 labeled
with the dropped x0-height.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .algebra import DEFAULT_TOL
from .errors import (GeneratorSpaceError, GeometryError, InvalidFarinError,
                     OutsideSegmentError)
from .lines3 import LineElement3, PluckerLine, line_element_point
from .lines4 import E4Line, E4LineElement, NearGeneratorWarning, mu

SPACE_DIM = {"P5": 6, "P6": 7, "P7": 8}

# dir-block-to-full-norm ratio: below the first the point is in the generator
# space; below the second the evaluation is flagged
_GEN_HARD = 1e-10
_GEN_SOFT = 1e-5


@dataclass(frozen=True)
class ControlNet:
    """Validated control polygon with Farin points.

    ``reps`` holds weight-absorbing representatives: farin[i] is (up to
    scale) reps[i] + reps[i+1].
    """

    space: Literal["P5", "P6", "P7"]
    controls: tuple
    farins: tuple
    reps: tuple = field(init=False, repr=False)

    def __post_init__(self):
        dim = SPACE_DIM.get(self.space)
        if dim is None:
            raise GeometryError(f"unknown space {self.space!r}")
        controls = tuple(np.asarray(c, dtype=float).reshape(dim) for c in self.controls)
        farins = tuple(np.asarray(f, dtype=float).reshape(dim) for f in self.farins)
        if len(controls) < 2:
            raise GeometryError("a net needs at least two controls")
        if len(farins) != len(controls) - 1:
            raise GeometryError("need exactly one Farin point per control segment")
        for i, c in enumerate(controls):
            if np.linalg.norm(c[:3]) <= _GEN_HARD * np.linalg.norm(c):
                raise GeneratorSpaceError(f"controls[{i}] lies in the generator space")
        controls = _orient(controls)
        reps = _recover_reps(controls, farins)
        object.__setattr__(self, "controls", controls)
        object.__setattr__(self, "farins", farins)
        object.__setattr__(self, "reps", reps)

    @property
    def degree(self) -> int:
        return len(self.controls) - 1

    def control_lines(self):
        """Controls as lines (P5) or line-elements (P6/P7, first scalar)."""
        out = []
        for c in self.controls:
            if self.space == "P5":
                out.append(E4Line.from_p5(c))
            else:
                out.append(E4LineElement.from_p6(c[:7]))
        return out


def _orient(controls):
    """Flip control representatives so consecutive dir blocks never point apart.

    Applied once; projectively a no-op, but it keeps the affine chart of
    the polygon consistent so Farin segment tests are meaningful.
    """
    out = [controls[0]]
    for c in controls[1:]:
        d = np.dot(out[-1][:3], c[:3])
        # strictly negative only: at (numerically) right angles the given
        # representative signs stand and the Farin data disambiguates
        if d < -1e-12 * np.linalg.norm(out[-1][:3]) * np.linalg.norm(c[:3]):
            c = -c
        out.append(c)
    return tuple(out)


def _recover_reps(controls, farins, tol: float = 1e-7):
    reps = [controls[0] / np.linalg.norm(controls[0])]
    for i, f in enumerate(farins):
        a, b = reps[i], controls[i + 1]
        M = np.stack([a, b], axis=1)
        coef, res, rank, _ = np.linalg.lstsq(M, f, rcond=None)
        resid = np.linalg.norm(M @ coef - f) / np.linalg.norm(f)
        if rank < 2 or resid > tol:
            raise InvalidFarinError(
                f"farins[{i}] is not in the span of its segment (residual {resid:.2e})")
        lam, mu_ = coef
        if lam * mu_ <= 0:
            raise OutsideSegmentError(f"farins[{i}] lies outside its control segment")
        reps.append(b * (mu_ / lam))
    return tuple(reps)


def weights_from_farin(net: ControlNet):
    """Scaled control representatives c_i* with farin[i] ~ c_i* + c_(i+1)*."""
    return list(net.reps)


def decasteljau_eval(reps, t: float) -> np.ndarray:
    """Repeated linear interpolation (1-t)*a + t*b on coordinate vectors."""
    pts = [np.asarray(r, dtype=float) for r in reps]
    if len(pts) < 2:
        raise GeometryError("need at least two representatives")
    while len(pts) > 1:
        pts = [(1.0 - t) * a + t * b for a, b in zip(pts[:-1], pts[1:])]
    return pts[0]


@dataclass(frozen=True)
class RuledSample:
    """One evaluated ruling with its height label."""

    t: float
    line: PluckerLine
    height: float
    point: Optional[np.ndarray] = None        # strips: marked point
    boundary: Optional[tuple] = None          # patches: two boundary points
    ell: Optional[float] = None
    ell2: Optional[float] = None


def _curve_point(net: ControlNet, t: float) -> np.ndarray:
    c = decasteljau_eval(net.reps, t)
    full = np.linalg.norm(c)
    nd = np.linalg.norm(c[:3])
    ref = max(np.linalg.norm(r) for r in net.reps)
    if full <= 1e-13 * ref or nd <= _GEN_HARD * full:
        raise GeneratorSpaceError(
            f"curve meets the generator space at t={t}", t=t)
    if nd <= _GEN_SOFT * full:
        warnings.warn(f"curve is close to the generator space at t={t}",
                      NearGeneratorWarning, stacklevel=3)
    return c


def _project6(c6):
    d, m = c6[:3], c6[3:6]
    f0 = -float(np.dot(d, m) / np.dot(d, d))
    a_m = m + f0 * d
    return d, a_m, f0


def eval_ruled(net: ControlNet, t: float) -> RuledSample:
    """Ruling of a P^5 net: projected line plus height label."""
    if net.space != "P5":
        raise GeometryError("eval_ruled expects a P5 net")
    c = _curve_point(net, t)
    d, m, f0 = _project6(c)
    return RuledSample(t, PluckerLine(d, m), f0)


def eval_strip(net: ControlNet, t: float) -> RuledSample:
    """Ruling plus marked point of a P^6 net."""
    if net.space != "P6":
        raise GeometryError("eval_strip expects a P6 net")
    c = _curve_point(net, t)
    d, m, f0 = _project6(c[:6])
    elem = LineElement3(d, m, float(c[6]))
    return RuledSample(t, elem.line, f0, point=line_element_point(elem),
                       ell=float(c[6]))


def eval_patch(net: ControlNet, t: float) -> RuledSample:
    """Ruling plus the two boundary points of a P^7 net."""
    if net.space != "P7":
        raise GeometryError("eval_patch expects a P7 net")
    c = _curve_point(net, t)
    d, m, f0 = _project6(c[:6])
    p1 = line_element_point(LineElement3(d, m, float(c[6])))
    p2 = line_element_point(LineElement3(d, m, float(c[7])))
    return RuledSample(t, PluckerLine(d, m), f0, boundary=(p1, p2),
                       ell=float(c[6]), ell2=float(c[7]))


def eval_sample(net: ControlNet, t: float) -> RuledSample:
    if net.space == "P5":
        return eval_ruled(net, t)
    if net.space == "P6":
        return eval_strip(net, t)
    return eval_patch(net, t)


# ---------------------------------------------------------------------------
# meshes
# ---------------------------------------------------------------------------


@dataclass
class Mesh:
    """Sampled E^3 ruled surface with height labels."""

    space: str
    ts: np.ndarray
    rulings: list
    vertices: np.ndarray               # (nt, nu, 3)
    heights: np.ndarray                # (nt,)
    curve: Optional[np.ndarray] = None
    boundaries: Optional[tuple] = None
    notes: list = field(default_factory=list)


def sample_mesh(net: ControlNet, nt: int, nu: int, u_range=(-1.0, 1.0)) -> Mesh:
    """Grid of surface points p(t_i) + u_j * unit_dir(t_i) with height labels.

    Strips also carry the marked-point polyline; patches clamp the u-grid
    between the two boundary scalars of each ruling.
    """
    if nt < 2 or nu < 2:
        raise GeometryError("need nt >= 2 and nu >= 2")
    ts = np.linspace(0.0, 1.0, nt)
    us = np.linspace(float(u_range[0]), float(u_range[1]), nu)
    rulings, notes = [], []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NearGeneratorWarning)
        for t in ts:
            rulings.append(eval_sample(net, float(t)))
        notes = [str(w.message) for w in caught
                 if issubclass(w.category, NearGeneratorWarning)]
    vertices = np.empty((nt, nu, 3))
    heights = np.array([r.height for r in rulings])
    curve = None
    boundaries = None
    for i, r in enumerate(rulings):
        dirv = r.line.dir / np.linalg.norm(r.line.dir)
        if net.space == "P7":
            anchor = r.line.point_closest_to_origin()
            s1 = r.ell / np.linalg.norm(r.line.dir)
            s2 = r.ell2 / np.linalg.norm(r.line.dir)
            lo, hi = (s1, s2) if s1 <= s2 else (s2, s1)
            uu = np.clip(us, lo, hi)
        else:
            anchor = (r.point if net.space == "P6"
                      else r.line.point_closest_to_origin())
            uu = us
        vertices[i] = anchor[None, :] + uu[:, None] * dirv[None, :]
    if net.space == "P6":
        curve = np.array([r.point for r in rulings])
    if net.space == "P7":
        boundaries = (np.array([r.boundary[0] for r in rulings]),
                      np.array([r.boundary[1] for r in rulings]))
    return Mesh(net.space, ts, rulings, vertices, heights, curve, boundaries, notes)


# ---------------------------------------------------------------------------
# degree of the projected strip parametrization
# ---------------------------------------------------------------------------


def _tracks(net: ControlNet, ts):
    """Affine coordinate tracks of the projected strip (points and height)."""
    rows = []
    for t in ts:
        r = eval_sample(net, float(t))
        if net.space == "P5":
            rows.append(np.concatenate([r.line.point_closest_to_origin(), [r.height]]))
        elif net.space == "P6":
            rows.append(np.concatenate([r.point, [r.height]]))
        else:
            rows.append(np.concatenate([r.boundary[0], r.boundary[1], [r.height]]))
    return np.asarray(rows)


def _rational_fit_ok(ts, K, d, tol) -> bool:
    """Do all tracks admit degree-d numerators over one degree-d denominator?"""
    m = K.shape[1]
    rows = []
    for t, k in zip(ts, K):
        tb = t ** np.arange(d + 1)
        for i in range(m):
            row = np.zeros((d + 1) * (m + 1))
            row[i * (d + 1):(i + 1) * (d + 1)] = tb
            row[-(d + 1):] = -k[i] * tb
            rows.append(row)
    A = np.asarray(rows)
    s = np.linalg.svd(A, compute_uv=False)
    return bool(s[-1] / s[0] < tol)


def surface_degree_bound(net: ControlNet, tol: float = 1e-10) -> int:
    """Fitted degree of the homogeneous parametrization of the projected strip.

    The point and height tracks are rational with one common denominator;
    the structural bound is twice the curve degree.  Returns the smallest
    degree whose common-denominator fit closes to ``tol``.
    """
    n = net.degree
    ts = np.linspace(0.0, 1.0, max(40, 14 * n + 12))
    ts = 0.02 + 0.96 * ts  # stay clear of exact endpoints
    K = _tracks(net, ts)
    scale = np.max(np.abs(K))
    K = K / max(scale, 1e-30)
    for d in range(0, 2 * n + 1):
        if _rational_fit_ok(ts, K, d, tol):
            return d
    raise GeometryError("projected strip does not fit the structural degree bound")
