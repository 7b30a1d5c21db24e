"""Scene documents: persistence, validation, lifting to nets, mesh export.

A scene stores each control and Farin entry as a height-labeled
line(-element) record ``{dir, mom, ell?, ell2?, height}``; the E^4 lift
of such a record is (dir, mom - height*dir, ell...).  All numbers are
serialized as plain JSON doubles, which round-trip exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from .bezier import ControlNet, Mesh, sample_mesh
from .errors import (GeometryError, InvalidFarinError, OutsideSegmentError,
                     SceneValidationError)

SCHEMA_VERSION = 1

_SPACES = ("P5", "P6", "P7")


@dataclass
class Scene:
    """In-memory scene: validated records plus sampling parameters."""

    space: str
    controls: list
    farins: list
    sampling: dict = field(default_factory=lambda: {"nt": 33, "nu": 9,
                                                    "u_range": [-1.0, 1.0]})
    metadata: dict = field(default_factory=dict)
    version: int = SCHEMA_VERSION
    revision: int = 0

    def to_net(self) -> ControlNet:
        controls = [lift_record(r, self.space) for r in self.controls]
        farins = [lift_record(r, self.space) for r in self.farins]
        try:
            return ControlNet(self.space, controls, farins)
        except (InvalidFarinError, OutsideSegmentError, GeometryError) as e:
            m = re.search(r"(farins\[\d+\]|controls\[\d+\])", str(e))
            raise SceneValidationError(str(e), path=m.group(1) if m else "") from e

    def to_document(self) -> dict:
        return {
            "version": self.version,
            "revision": self.revision,
            "space": self.space,
            "metadata": dict(self.metadata),
            "controls": [dict(r) for r in self.controls],
            "farins": [dict(r) for r in self.farins],
            "sampling": dict(self.sampling),
        }


def lift_record(rec: dict, space: str) -> np.ndarray:
    """E^4 lift of a record: (dir, mom - height*dir [, ell [, ell2]])."""
    d = np.asarray(rec["dir"], dtype=float)
    m = np.asarray(rec["mom"], dtype=float)
    h = float(rec.get("height", 0.0))
    base = np.concatenate([d, m - h * d])
    if space == "P5":
        return base
    if space == "P6":
        return np.concatenate([base, [float(rec.get("ell", 0.0))]])
    return np.concatenate([base, [float(rec.get("ell", 0.0)),
                                  float(rec.get("ell2", 0.0))]])


def _check_record(rec, path):
    if not isinstance(rec, dict):
        raise SceneValidationError("record must be an object", path=path)
    for key in ("dir", "mom"):
        v = rec.get(key)
        if (not isinstance(v, (list, tuple)) or len(v) != 3
                or not all(isinstance(x, (int, float)) for x in v)):
            raise SceneValidationError(f"field '{key}' must be a 3-vector", path=path)
    d = np.asarray(rec["dir"], dtype=float)
    m = np.asarray(rec["mom"], dtype=float)
    scale = max(np.linalg.norm(d), np.linalg.norm(m), abs(float(rec.get("height", 0.0))), 1.0)
    if np.linalg.norm(d) <= 1e-10 * scale:
        raise SceneValidationError("direction must be nonzero", path=path)
    if abs(float(np.dot(d, m))) / scale**2 > 1e-7:
        raise SceneValidationError("Pluecker condition violated: <dir, mom> != 0", path=path)
    for key in ("ell", "ell2", "height"):
        if key in rec and not isinstance(rec[key], (int, float)):
            raise SceneValidationError(f"field '{key}' must be a number", path=path)


def scene_from_document(doc: dict) -> Scene:
    """Validate a parsed document and build a Scene; errors carry field paths."""
    if not isinstance(doc, dict):
        raise SceneValidationError("document must be an object")
    space = doc.get("space")
    if space not in _SPACES:
        raise SceneValidationError(f"space must be one of {_SPACES}", path="space")
    controls = doc.get("controls")
    farins = doc.get("farins")
    if not isinstance(controls, list) or len(controls) < 2:
        raise SceneValidationError("need at least two control records", path="controls")
    if not isinstance(farins, list) or len(farins) != len(controls) - 1:
        raise SceneValidationError("need one Farin record per segment", path="farins")
    for i, rec in enumerate(controls):
        _check_record(rec, f"controls[{i}]")
    for i, rec in enumerate(farins):
        _check_record(rec, f"farins[{i}]")
    sampling = doc.get("sampling", {})
    if not isinstance(sampling, dict):
        raise SceneValidationError("sampling must be an object", path="sampling")
    sampling = {"nt": int(sampling.get("nt", 33)), "nu": int(sampling.get("nu", 9)),
                "u_range": [float(x) for x in sampling.get("u_range", [-1.0, 1.0])]}
    if sampling["nt"] < 2 or sampling["nu"] < 2:
        raise SceneValidationError("nt and nu must be at least 2", path="sampling")
    if len(sampling["u_range"]) != 2:
        raise SceneValidationError("u_range must be [lo, hi]", path="sampling.u_range")
    scene = Scene(space=space, controls=controls, farins=farins, sampling=sampling,
                  metadata=doc.get("metadata", {}) or {},
                  version=int(doc.get("version", SCHEMA_VERSION)),
                  revision=int(doc.get("revision", 0)))
    scene.to_net()  # net invariants (farin-in-segment etc.)
    return scene


def scene_load(path) -> Scene:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SceneValidationError(
            f"malformed scene file at byte offset {e.pos}: {e.msg}") from e
    return scene_from_document(doc)


def scene_save(scene: Scene, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scene.to_document(), fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# mesh documents and OBJ export
# ---------------------------------------------------------------------------


def canonical_json(doc) -> bytes:
    """Deterministic byte encoding shared by the CLI and the service."""
    return (json.dumps(doc, separators=(",", ":"), sort_keys=True) + "\n").encode()


def mesh_to_document(mesh: Mesh, nt: int, nu: int, u_range) -> dict:
    rulings = []
    for r in mesh.rulings:
        rec = {"t": float(r.t), "dir": list(map(float, r.line.dir)),
               "mom": list(map(float, r.line.mom)), "height": float(r.height)}
        if r.point is not None:
            rec["point"] = list(map(float, r.point))
        if r.boundary is not None:
            rec["boundary"] = [list(map(float, p)) for p in r.boundary]
        if r.ell is not None:
            rec["ell"] = float(r.ell)
        if r.ell2 is not None:
            rec["ell2"] = float(r.ell2)
        rulings.append(rec)
    doc = {
        "space": mesh.space,
        "nt": int(nt),
        "nu": int(nu),
        "u_range": [float(u_range[0]), float(u_range[1])],
        "rulings": rulings,
        "vertices": [[list(map(float, v)) for v in row] for row in mesh.vertices],
        "notes": list(mesh.notes),
    }
    if mesh.curve is not None:
        doc["curve"] = [list(map(float, p)) for p in mesh.curve]
    if mesh.boundaries is not None:
        doc["boundaries"] = [[list(map(float, p)) for p in b] for b in mesh.boundaries]
    return doc


def build_mesh_document(scene: Scene, nt=None, nu=None, u_range=None) -> dict:
    nt = int(nt if nt is not None else scene.sampling["nt"])
    nu = int(nu if nu is not None else scene.sampling["nu"])
    u_range = list(u_range if u_range is not None else scene.sampling["u_range"])
    mesh = sample_mesh(scene.to_net(), nt, nu, u_range)
    return mesh_to_document(mesh, nt, nu, u_range)


def mesh_document_to_obj(doc: dict) -> str:
    """OBJ text: one vertex block per ruling, preceded by its height label comment."""
    out = [f"# ruledspace mesh, space {doc['space']}, {doc['nt']}x{doc['nu']} grid"]
    nt, nu = doc["nt"], doc["nu"]
    for i, (row, rul) in enumerate(zip(doc["vertices"], doc["rulings"])):
        out.append(f"# ruling {i} t={rul['t']!r} height={rul['height']!r}")
        for v in row:
            out.append("v {} {} {}".format(*(repr(float(x)) for x in v)))
    for i in range(nt - 1):
        for j in range(nu - 1):
            a = i * nu + j + 1
            b = a + 1
            c = a + nu + 1
            d = a + nu
            out.append(f"f {a} {b} {c} {d}")
    if "curve" in doc:
        base = nt * nu
        for p in doc["curve"]:
            out.append("v {} {} {}".format(*(repr(float(x)) for x in p)))
        out.append("l " + " ".join(str(base + k + 1) for k in range(len(doc["curve"]))))
    return "\n".join(out) + "\n"
