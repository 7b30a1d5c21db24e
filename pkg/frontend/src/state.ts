/** Editor state and the pure edit reducers.
 *
 * Controls move with all six degrees of freedom (translate the carrier,
 * rotate its direction, slide the marked point); Farin elements are
 * projected back onto their segment after every edit.  Heights change in
 * scroll steps of 1/28 by default.
 */

import { fmtHeight } from "./format.js";
import {
  add,
  cross,
  dot,
  elementPoint,
  farinCoefficients,
  liftRecord,
  norm,
  projectFarinOntoSegment,
  recordFromLift,
  recoverReps,
  scale,
  validateScene,
} from "./geometry.js";
import type { ElementRecord, Scene, Selection } from "./types.js";

export const HEIGHT_STEP = 1 / 28;

export interface CameraState {
  theta: number;
  phi: number;
  distance: number;
  target: [number, number, number];
}

export interface EditorState {
  scene: Scene;
  revision: number;
  selection: Selection;
  hover: Selection;
  camera: CameraState;
  undoStack: Scene[];
  heightStep: number;
}

export function initialState(scene: Scene): EditorState {
  return {
    scene,
    revision: scene.revision ?? 0,
    selection: null,
    hover: null,
    camera: { theta: 0.6, phi: 1.0, distance: 8, target: [0, 0, 0] },
    undoStack: [],
    heightStep: HEIGHT_STEP,
  };
}

export type DragOp =
  | { mode: "translate"; delta: [number, number, number] }
  | { mode: "rotate"; axis: [number, number, number]; angle: number }
  | { mode: "slide"; du: number };

function cloneScene(scene: Scene): Scene {
  return JSON.parse(JSON.stringify(scene));
}

function rotateVec(v: number[], axis: number[], angle: number): number[] {
  const k = scale(axis, 1 / norm(axis));
  const c = Math.cos(angle);
  const s = Math.sin(angle);
  // Rodrigues rotation
  return add(add(scale(v, c), scale(cross(k, v), s)), scale(k, dot(k, v) * (1 - c)));
}

function applyDragToRecord(rec: ElementRecord, op: DragOp): ElementRecord {
  const out: ElementRecord = JSON.parse(JSON.stringify(rec));
  if (op.mode === "translate") {
    // moving the carrier line: moment picks up delta x dir; the marked point follows
    out.mom = add(rec.mom, cross(op.delta, rec.dir));
    out.ell = (rec.ell ?? 0) + dot(op.delta, rec.dir);
    if (rec.ell2 !== undefined) out.ell2 = rec.ell2 + dot(op.delta, rec.dir);
  } else if (op.mode === "rotate") {
    // rotate the direction about the marked point
    const p = elementPoint(rec);
    const d = rotateVec(rec.dir, op.axis, op.angle);
    out.dir = d;
    out.mom = cross(p, d);
    out.ell = dot(p, d);
    if (rec.ell2 !== undefined) {
      // keep the second boundary point at its distance along the new direction
      const gap = (rec.ell2 - (rec.ell ?? 0)) / norm(rec.dir);
      out.ell2 = (out.ell ?? 0) + gap * norm(d);
    }
  } else {
    // slide the marked point along the carrier
    out.ell = (rec.ell ?? 0) + op.du * norm(rec.dir);
    if (rec.ell2 !== undefined) out.ell2 = rec.ell2 + op.du * norm(rec.dir);
  }
  return out;
}

/** Segment representatives surrounding farin i, from /classify data or local recovery. */
function segmentReps(scene: Scene, i: number, reps?: number[][]): [number[], number[]] {
  if (reps && reps.length === 2) return [reps[0], reps[1]];
  const all = recoverReps(scene);
  return [all[i], all[i + 1]];
}

/** Moving a control drags its adjacent Farin elements along, keeping their
 * weight ratios, so the whole net stays valid. */
function transportAdjacentFarins(oldScene: Scene, scene: Scene, index: number): void {
  for (const i of [index - 1, index]) {
    if (i < 0 || i >= scene.farins.length) continue;
    const { lam, mu } = farinCoefficients(oldScene, i);
    const a = liftRecord(scene.controls[i], scene.space);
    const b = liftRecord(scene.controls[i + 1], scene.space);
    scene.farins[i] = recordFromLift(add(scale(a, lam), scale(b, mu)), scene.space);
  }
}

export function dragLineElement(
  state: EditorState,
  index: number,
  kind: "control" | "farin",
  op: DragOp,
  segReps?: number[][],
): EditorState {
  const scene = cloneScene(state.scene);
  if (kind === "control") {
    scene.controls[index] = applyDragToRecord(scene.controls[index], op);
    transportAdjacentFarins(state.scene, scene, index);
  } else {
    const candidate = applyDragToRecord(scene.farins[index], op);
    const [ra, rb] = segmentReps(state.scene, index, segReps);
    const snapped = projectFarinOntoSegment(liftRecord(candidate, scene.space), ra, rb);
    scene.farins[index] = recordFromLift(snapped, scene.space);
  }
  if (validateScene(scene).length > 0) {
    return state; // refuse edits that cannot round-trip
  }
  return {
    ...state,
    scene,
    undoStack: [...state.undoStack, state.scene],
  };
}

export function scrollHeight(
  state: EditorState,
  index: number,
  kind: "control" | "farin",
  ticks: number,
): EditorState {
  const scene = cloneScene(state.scene);
  if (kind === "control") {
    const rec = scene.controls[index];
    rec.height = (rec.height ?? 0) + ticks * state.heightStep;
    transportAdjacentFarins(state.scene, scene, index);
  } else {
    const rec = scene.farins[index];
    rec.height = (rec.height ?? 0) + ticks * state.heightStep;
    // keep the Farin element on its segment after the lift changed
    const [ra, rb] = segmentReps(state.scene, index);
    const snapped = projectFarinOntoSegment(liftRecord(rec, scene.space), ra, rb);
    scene.farins[index] = recordFromLift(snapped, scene.space);
  }
  if (validateScene(scene).length > 0) return state;
  return { ...state, scene, undoStack: [...state.undoStack, state.scene] };
}

export function undo(state: EditorState): EditorState {
  if (state.undoStack.length === 0) return state;
  const prev = state.undoStack[state.undoStack.length - 1];
  return { ...state, scene: prev, undoStack: state.undoStack.slice(0, -1) };
}

export function acceptRevision(state: EditorState, revision: number): EditorState {
  state.scene.revision = revision;
  return { ...state, revision };
}

/** Labels rendered next to each element, exactly mirroring the height fields. */
export function renderLabels(scene: Scene): { controls: string[]; farins: string[] } {
  const lab = (r: ElementRecord) => `(${fmtHeight(r.height ?? 0)})`;
  return { controls: scene.controls.map(lab), farins: scene.farins.map(lab) };
}
