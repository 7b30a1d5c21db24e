/** Editor wiring: two synchronized viewports (labeled top view, 3D view),
 * pointer drags on elements, scroll-wheel height edits, live WS updates. */

import { EditorClient, shouldApplyFrame } from "./client.js";
import {
  EditorState,
  acceptRevision,
  dragLineElement,
  initialState,
  renderLabels,
  scrollHeight,
  undo,
} from "./state.js";
import { TopView } from "./topview.js";
import type { ClassifyDocument, MeshDocument, Selection } from "./types.js";
import { View3D } from "./view3d.js";

const client = new EditorClient(
  (window as unknown as { RULEDSPACE_BASE?: string }).RULEDSPACE_BASE ?? "",
);

let state: EditorState;
let mesh: MeshDocument | null = null;
let classify: ClassifyDocument | null = null;

const top = new TopView();
const v3d = new View3D();
const toast = document.createElement("div");
toast.className = "toast";

function notify(msg: string): void {
  toast.textContent = msg;
  toast.classList.add("visible");
  setTimeout(() => toast.classList.remove("visible"), 2500);
}

function redraw(): void {
  top.render(state.scene, mesh, state.selection);
  if (mesh) v3d.setMesh(mesh);
  v3d.updateCamera(state.camera);
  v3d.render();
  const labels = renderLabels(state.scene);
  document.querySelector("#labels")!.textContent =
    `controls ${labels.controls.join(" ")}  farins ${labels.farins.join(" ")}`;
}

function pushScene(): void {
  client.schedulePut(state.scene, (r) => {
    if (r.ok && r.revision !== undefined) {
      state = acceptRevision(state, r.revision);
    } else if (r.stale) {
      void reload(); // a newer revision exists; refetch and retry from there
    } else if (r.detail) {
      state = undo(state);
      notify(`rejected: ${r.detail}`);
      redraw();
    }
  });
}

async function reload(): Promise<void> {
  const scene = await client.getScene();
  state = { ...initialState(scene), camera: state?.camera ?? initialState(scene).camera };
  mesh = await client.sample();
  classify = await client.classify().catch(() => null);
  redraw();
}

function segRepsFor(sel: Selection): number[][] | undefined {
  if (!sel || sel.kind !== "farin" || !classify) return undefined;
  return classify.segments[sel.index]?.reps;
}

function wireInput(): void {
  let dragging = false;
  let last: [number, number] | null = null;
  top.onSelect = (sel) => {
    state = { ...state, selection: sel };
    dragging = true;
    redraw();
  };
  top.svg.addEventListener("pointerdown", () => {
    state = { ...state, selection: null };
    redraw();
  });
  window.addEventListener("pointermove", (ev) => {
    if (!dragging || !state.selection) return;
    if (last) {
      const delta = top.dragDelta(ev.clientX - last[0], ev.clientY - last[1]);
      const sel = state.selection;
      const next = ev.shiftKey
        ? dragLineElement(state, sel.index, sel.kind,
                          { mode: "rotate", axis: [0, 0, 1], angle: delta[0] }, segRepsFor(sel))
        : ev.altKey
          ? dragLineElement(state, sel.index, sel.kind,
                            { mode: "slide", du: delta[0] }, segRepsFor(sel))
          : dragLineElement(state, sel.index, sel.kind,
                            { mode: "translate", delta }, segRepsFor(sel));
      if (next !== state) {
        state = next;
        pushScene();
        redraw();
      }
    }
    last = [ev.clientX, ev.clientY];
  });
  window.addEventListener("pointerup", () => {
    dragging = false;
    last = null;
  });
  top.svg.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const ticks = ev.deltaY < 0 ? 1 : -1;
    if (state.selection) {
      const sel = state.selection;
      const next = scrollHeight(state, sel.index, sel.kind, ticks);
      if (next !== state) {
        state = next;
        pushScene();
        redraw();
      }
    } else {
      // wheel over empty canvas zooms the camera instead
      state.camera.distance *= ticks > 0 ? 0.9 : 1.1;
      redraw();
    }
  });
  window.addEventListener("keydown", (ev) => {
    if (ev.key === "z" && (ev.ctrlKey || ev.metaKey)) {
      state = undo(state);
      pushScene();
      redraw();
    }
  });
}

async function boot(): Promise<void> {
  const root = document.querySelector("#app")!;
  const left = document.createElement("div");
  left.className = "pane";
  left.appendChild(top.svg);
  const right = document.createElement("div");
  right.className = "pane";
  right.appendChild(v3d.canvas);
  const labels = document.createElement("div");
  labels.id = "labels";
  root.append(left, right, labels, toast);
  await reload();
  wireInput();
  client.connectLive((frame) => {
    if (!shouldApplyFrame(state.revision, frame)) return;
    if ("rulings" in frame.mesh) {
      mesh = frame.mesh;
      state = acceptRevision(state, frame.revision);
      redraw();
    }
  });
}

void boot();
