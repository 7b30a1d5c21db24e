"""HTTP/WebSocket service backing the interactive editor.

One scene per server instance; writes are serialized behind an optimistic
revision counter, live clients get a freshly sampled mesh frame after
every accepted replacement.
"""

from __future__ import annotations

import asyncio
import json
from concurrent.futures import ThreadPoolExecutor

from fastapi import FastAPI, Request, Response, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import gamma as gm
from .errors import GeometryError, SceneValidationError
from .scene import Scene, build_mesh_document, canonical_json, scene_from_document


def _default_scene() -> Scene:
    from .cli import fig5_scene

    return fig5_scene()


def _classify_doc(scene: Scene) -> dict:
    net = scene.to_net()
    lines = net.control_lines()
    segments = []
    for i, (a, b) in enumerate(zip(lines[:-1], lines[1:])):
        sc = gm.classify_segment(a, b)
        seg = {"index": i, "tag": sc.tag,
               "reps": [list(map(float, net.reps[i])),
                        list(map(float, net.reps[i + 1]))]}
        if sc.vertex is not None:
            seg["vertex"] = list(map(float, sc.vertex))
        if sc.circle is not None:
            center, radius = sc.circle
            seg["circle"] = {"center": list(map(float, center)), "radius": float(radius)}
        if sc.gamma is not None:
            g = sc.gamma
            seg["gamma"] = {"h": g.h, "n": g.n, "alpha": g.alpha,
                            "rot": [list(map(float, row)) for row in g.frame.rot],
                            "trans": list(map(float, g.frame.trans))}
        segments.append(seg)
    return {"revision": scene.revision, "segments": segments}


def create_app(scene: Scene | None = None) -> FastAPI:
    app = FastAPI(title="ruledspace", version="0.1.0")
    # the browser editor is usually served from a separate static host
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    state = app.state
    state.scene = scene if scene is not None else _default_scene()
    state.lock = asyncio.Lock()
    state.clients = set()
    state.pool = ThreadPoolExecutor(max_workers=4)

    async def _run(fn, *args):
        return await asyncio.get_running_loop().run_in_executor(state.pool, fn, *args)

    async def _broadcast_frame():
        scene = state.scene
        try:
            doc = await _run(build_mesh_document, scene)
        except GeometryError as e:
            doc = {"error": str(e)}
        frame = json.dumps({"revision": scene.revision, "mesh": doc},
                           separators=(",", ":"), sort_keys=True)
        dead = []
        for ws in list(state.clients):
            try:
                await ws.send_text(frame)
            except Exception:
                dead.append(ws)
        for ws in dead:
            state.clients.discard(ws)

    @app.get("/scene")
    async def get_scene():
        return JSONResponse(state.scene.to_document())

    @app.put("/scene")
    async def put_scene(request: Request):
        try:
            doc = await request.json()
        except json.JSONDecodeError as e:
            return JSONResponse({"detail": f"malformed JSON at byte {e.pos}"}, status_code=400)
        async with state.lock:
            current = state.scene.revision
            if int(doc.get("revision", -1)) != current:
                return JSONResponse(
                    {"detail": f"stale revision {doc.get('revision')}, current {current}"},
                    status_code=409)
            try:
                scene = await _run(scene_from_document, doc)
            except SceneValidationError as e:
                return JSONResponse({"detail": str(e), "path": e.path}, status_code=400)
            scene.revision = current + 1
            state.scene = scene
            await _broadcast_frame()
            return JSONResponse({"revision": scene.revision})

    @app.post("/sample")
    async def post_sample(request: Request):
        try:
            body = await request.json() if await request.body() else {}
        except json.JSONDecodeError as e:
            return JSONResponse({"detail": f"malformed JSON at byte {e.pos}"}, status_code=400)
        nt = body.get("nt")
        nu = body.get("nu")
        u_range = body.get("u_range")
        try:
            doc = await _run(lambda: build_mesh_document(state.scene, nt, nu, u_range))
        except (GeometryError, SceneValidationError) as e:
            return JSONResponse({"detail": str(e)}, status_code=400)
        return Response(content=canonical_json(doc), media_type="application/json")

    @app.get("/classify")
    async def get_classify():
        try:
            doc = await _run(_classify_doc, state.scene)
        except (GeometryError, SceneValidationError) as e:
            return JSONResponse({"detail": str(e)}, status_code=400)
        return JSONResponse(doc)

    @app.websocket("/live")
    async def ws_live(ws: WebSocket):
        await ws.accept()
        state.clients.add(ws)
        try:
            doc = await _run(build_mesh_document, state.scene)
            await ws.send_text(json.dumps(
                {"revision": state.scene.revision, "mesh": doc},
                separators=(",", ":"), sort_keys=True))
            while True:
                # clients only listen; consume pings/texts to detect disconnect
                await ws.receive_text()
        except WebSocketDisconnect:
            pass
        finally:
            state.clients.discard(ws)

    return app
