"""Command-line interface: evaluate, mesh, verify, serve, demo."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import gamma as gm
from .algebra import proj_equal
from .bezier import eval_sample, surface_degree_bound
from .errors import GeometryError, SceneValidationError
from .lines3 import LineElement3, PluckerLine, plucker_condition_residual
from .lines4 import (E4LineElement, element_point, height_f0, lift_element,
                     lift_line)
from .scene import (Scene, build_mesh_document, canonical_json,
                    mesh_document_to_obj, scene_load, scene_save)

DEFAULT_PORT = 8273


def _sample_to_doc(r):
    doc = {"t": r.t, "dir": list(map(float, r.line.dir)),
           "mom": list(map(float, r.line.mom)), "height": r.height}
    if r.point is not None:
        doc["point"] = list(map(float, r.point))
    if r.boundary is not None:
        doc["boundary"] = [list(map(float, p)) for p in r.boundary]
    return doc


def cmd_eval(args) -> int:
    scene = scene_load(args.scene)
    net = scene.to_net()
    r = eval_sample(net, args.t)
    print(json.dumps(_sample_to_doc(r), indent=2, sort_keys=True))
    return 0


def cmd_mesh(args) -> int:
    scene = scene_load(args.scene)
    if (args.u_lo is None) != (args.u_hi is None):
        raise SceneValidationError("--u-lo and --u-hi must be given together")
    u_range = None if args.u_lo is None else (args.u_lo, args.u_hi)
    doc = build_mesh_document(scene, args.nt, args.nu, u_range)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(mesh_document_to_obj(doc))
    sidecar = os.path.splitext(args.output)[0] + ".labels.json"
    with open(sidecar, "wb") as fh:
        fh.write(canonical_json(doc))
    print(f"wrote {args.output} and {sidecar}")
    return 0


def _segments(scene: Scene):
    net = scene.to_net()
    lines = net.control_lines()
    return net, list(zip(lines[:-1], lines[1:]))


def verify_scene(scene: Scene, report=print) -> bool:
    """Invariant suite: Pluecker residuals, segment circle fits, degree fit."""
    ok = True

    def check(name, passed, detail=""):
        nonlocal ok
        ok = ok and passed
        report(f"{'PASS' if passed else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))

    # per-record Pluecker residuals of the E^3 reading
    worst = 0.0
    for rec in scene.controls + scene.farins:
        worst = max(worst, abs(plucker_condition_residual(list(rec["dir"]) + list(rec["mom"]))))
    check("pluecker residuals", worst < 1e-9, f"max {worst:.2e}")

    net, segments = _segments(scene)

    # endpoint interpolation: evaluated end rulings reproduce the end records
    end_ok = True
    for t, rec in ((0.0, scene.controls[0]), (1.0, scene.controls[-1])):
        s = eval_sample(net, t)
        want = PluckerLine(rec["dir"], rec["mom"])
        end_ok = end_ok and proj_equal(s.line.as_array(), want.as_array(), tol=1e-9)
        end_ok = end_ok and abs(s.height - float(rec.get("height", 0.0))) < 1e-9
    check("endpoint interpolation", end_ok)

    # strip circles: for each skew control segment the lifted strip curve is a circle
    if scene.space in ("P6", "P7"):
        circ_worst = 0.0
        tested = 0
        for a, b in segments:
            tag = gm.classify_segment(a, b).tag
            if tag != "generic_skew":
                continue
            ts = np.linspace(0.0, 1.0, 40)
            pts = []
            for t in ts:
                c = (1 - t) * a.as_p6() + t * b.as_p6()
                e = E4LineElement.from_p6(c)
                pts.append(element_point(e).as_array())
            try:
                *_, res = gm.fit_circle_3d(np.asarray(pts))
            except GeometryError as e:
                check("segment circles", False, str(e))
                break
            circ_worst = max(circ_worst, res)
            tested += 1
        else:
            check("segment circles", circ_worst < 1e-9,
                  f"{tested} segs, max residual {circ_worst:.2e}")

    # degree of the projected strip parametrization
    n = net.degree
    d = surface_degree_bound(net)
    check(f"degree<={2 * n}", d <= 2 * n, f"fitted {d}")

    # height labels equal the pedal heights of the lifted records
    h_ok = True
    for rec in scene.controls:
        if scene.space == "P5":
            g = lift_line(PluckerLine(rec["dir"], rec["mom"]), float(rec.get("height", 0.0)))
        else:
            g = lift_element(LineElement3(rec["dir"], rec["mom"], float(rec.get("ell", 0.0))),
                             float(rec.get("height", 0.0)))
        h_ok = h_ok and abs(height_f0(g) - float(rec.get("height", 0.0))) < 1e-9
    check("heights", h_ok)
    return ok


def cmd_verify(args) -> int:
    scene = scene_load(args.scene)
    return 0 if verify_scene(scene) else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    scene = scene_load(args.scene) if args.scene else None
    app = create_app(scene)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_demo(args) -> int:
    if args.what == "gamma":
        g = gm.GammaSurface(args.h, args.n, args.alpha)
        ts = np.linspace(0.0, 1.0, args.samples)
        strict = np.array([gm.gamma_striction(g, t) for t in ts])
        center, radius, _, resid = gm.fit_circle_3d(strict)
        nreal, ntotal = gm.degree_slice_check(g)
        doc = {
            "h": g.h, "n": g.n, "alpha": g.alpha,
            "striction_circle": {"center": list(map(float, center)),
                                 "radius": radius, "fit_residual": resid},
            "slice_count": {"real": nreal, "total": ntotal},
            "rulings": [{"t": float(t),
                         "point": list(map(float, gm.gamma_striction(g, float(t)))),
                         "dir": list(map(float, gm.gamma_ruling_dir(g, float(t))))}
                        for t in ts],
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
        return 0
    if args.what == "fig5":
        scene = fig5_scene()
        if args.output:
            scene_save(scene, args.output)
            print(f"wrote {args.output}")
        else:
            print(json.dumps(scene.to_document(), indent=2, sort_keys=True))
        return 0
    raise SystemExit(f"unknown demo {args.what!r}")


def fig5_scene() -> Scene:
    """Quadratic strip scene with heights (0, 20/7, 0) and midpoint Farin records."""
    from .scene import scene_from_document

    def element(p, d, height):
        p, d = np.asarray(p, dtype=float), np.asarray(d, dtype=float)
        return {"dir": list(map(float, d)), "mom": list(map(float, np.cross(p, d))),
                "ell": float(np.dot(p, d)), "height": float(height)}

    start = element([0.4, 0.5, 0.0], [0.0, 1.0, 0.0], 0.0)
    ctrl = element([1.3, 0.2, -0.9], [-0.45, 0.75, 0.6], 20.0 / 7.0)
    end = element([-0.2, 1.0, 0.3], [0.9, 0.25, 0.55], 0.0)

    def midpoint(a, b):
        la = np.array(list(a["dir"]) + list(np.array(a["mom"]) - a["height"] * np.array(a["dir"]))
                      + [a["ell"]])
        lb = np.array(list(b["dir"]) + list(np.array(b["mom"]) - b["height"] * np.array(b["dir"]))
                      + [b["ell"]])
        la = la / np.linalg.norm(la)
        lb = lb / np.linalg.norm(lb)
        if np.dot(la[:3], lb[:3]) < 0:
            lb = -lb
        f = la + lb
        d, m = f[:3], f[3:6]
        h = -float(np.dot(d, m) / np.dot(d, d))
        return {"dir": list(map(float, d)), "mom": list(map(float, m + h * d)),
                "ell": float(f[6]), "height": h}

    doc = {
        "version": 1,
        "revision": 0,
        "space": "P6",
        "metadata": {"name": "fig5",
                     "description": "quadratic rational ruled surface strip demo"},
        "controls": [start, ctrl, end],
        "farins": [midpoint(start, ctrl), midpoint(ctrl, end)],
        "sampling": {"nt": 33, "nu": 9, "u_range": [-1.5, 1.5]},
    }
    return scene_from_document(doc)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="ruledspace",
                                 description="rational ruled surface design toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("eval", help="evaluate one ruling of a scene")
    p.add_argument("scene")
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("mesh", help="export a sampled OBJ mesh plus label sidecar")
    p.add_argument("scene")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--nt", type=int, default=None)
    p.add_argument("--nu", type=int, default=None)
    p.add_argument("--u-lo", type=float, default=None)
    p.add_argument("--u-hi", type=float, default=None)
    p.set_defaults(fn=cmd_mesh)

    p = sub.add_parser("verify", help="run the invariant suite on a scene")
    p.add_argument("scene")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("serve", help="start the editor service")
    p.add_argument("--scene", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("RULEDSPACE_PORT", DEFAULT_PORT)))
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("demo", help="emit demo data (gamma surface, fig5 scene)")
    p.add_argument("what", choices=["gamma", "fig5"])
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--n", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=math.pi / 2)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_demo)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (SceneValidationError, GeometryError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
