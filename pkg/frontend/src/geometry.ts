/** Client-side mirrors of the scene validation and the Farin segment rules.
 *
 * The editor never computes surface geometry; it only keeps edits valid
 * before they are sent to the service.
 */

import type { ElementRecord, Scene } from "./types.js";

export type Vec = number[];

export const dot = (a: Vec, b: Vec): number => a.reduce((s, x, i) => s + x * b[i], 0);
export const norm = (a: Vec): number => Math.sqrt(dot(a, a));
export const add = (a: Vec, b: Vec): Vec => a.map((x, i) => x + b[i]);
export const sub = (a: Vec, b: Vec): Vec => a.map((x, i) => x - b[i]);
export const scale = (a: Vec, s: number): Vec => a.map((x) => x * s);
export const cross = (a: Vec, b: Vec): Vec => [
  a[1] * b[2] - a[2] * b[1],
  a[2] * b[0] - a[0] * b[2],
  a[0] * b[1] - a[1] * b[0],
];

export function spaceDim(space: string): number {
  return space === "P5" ? 6 : space === "P6" ? 7 : 8;
}

/** Lift a height-labeled record to its P5/P6/P7 coordinates. */
export function liftRecord(rec: ElementRecord, space: string): Vec {
  const h = rec.height ?? 0;
  const base = [...rec.dir, ...rec.mom.map((m, i) => m - h * rec.dir[i])];
  if (space === "P5") return base;
  if (space === "P6") return [...base, rec.ell ?? 0];
  return [...base, rec.ell ?? 0, rec.ell2 ?? 0];
}

/** Decompose projective coordinates back into a height-labeled record. */
export function recordFromLift(c: Vec, space: string): ElementRecord {
  const d = c.slice(0, 3);
  const m = c.slice(3, 6);
  const h = -dot(d, m) / dot(d, d);
  const rec: ElementRecord = {
    dir: d,
    mom: m.map((x, i) => x + h * d[i]),
    height: h,
  };
  if (space !== "P5") rec.ell = c[6];
  if (space === "P7") rec.ell2 = c[7];
  return rec;
}

export function pluckerResidual(rec: ElementRecord): number {
  const s = Math.max(norm(rec.dir), norm(rec.mom), 1);
  return Math.abs(dot(rec.dir, rec.mom)) / (s * s);
}

/** Marked point of a line-element record (its E^3 part). */
export function elementPoint(rec: ElementRecord): Vec {
  const d = rec.dir;
  const p = add(cross(d, rec.mom), scale(d, rec.ell ?? 0));
  return scale(p, 1 / dot(d, d));
}

export interface ValidationIssue {
  path: string;
  message: string;
}

/** Mirror of the service-side schema checks; returns all issues found. */
export function validateScene(scene: Scene): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  const check = (rec: ElementRecord, path: string) => {
    if (norm(rec.dir) <= 1e-10) issues.push({ path, message: "direction must be nonzero" });
    if (pluckerResidual(rec) > 1e-7)
      issues.push({ path, message: "Pluecker condition violated" });
  };
  scene.controls.forEach((r, i) => check(r, `controls[${i}]`));
  scene.farins.forEach((r, i) => check(r, `farins[${i}]`));
  if (scene.farins.length !== scene.controls.length - 1)
    issues.push({ path: "farins", message: "need one Farin record per segment" });
  try {
    recoverReps(scene);
  } catch (e) {
    issues.push({ path: "farins", message: String(e instanceof Error ? e.message : e) });
  }
  return issues;
}

/** Weight-absorbing representatives; mirrors the backend recovery. */
export function recoverReps(scene: Scene): Vec[] {
  const dim = spaceDim(scene.space);
  let controls = scene.controls.map((r) => liftRecord(r, scene.space));
  const farins = scene.farins.map((r) => liftRecord(r, scene.space));
  // orientation pass on consecutive direction blocks
  const oriented: Vec[] = [controls[0]];
  for (const c of controls.slice(1)) {
    const prev = oriented[oriented.length - 1];
    const d = dot(prev.slice(0, 3), c.slice(0, 3));
    oriented.push(d < -1e-12 * norm(prev.slice(0, 3)) * norm(c.slice(0, 3)) ? scale(c, -1) : c);
  }
  controls = oriented;
  const reps: Vec[] = [scale(controls[0], 1 / norm(controls[0]))];
  farins.forEach((f, i) => {
    const a = reps[i];
    const b = controls[i + 1];
    const { lam, mu, resid } = lstsq2(a, b, f);
    if (resid > 1e-7) throw new Error(`farins[${i}] is not in the span of its segment`);
    if (lam * mu <= 0) throw new Error(`farins[${i}] lies outside its control segment`);
    reps.push(scale(b, mu / lam));
  });
  if (reps.some((r) => r.length !== dim)) throw new Error("dimension mismatch");
  return reps;
}

/** Coefficients of f against the raw lifted pair of segment i. */
export function farinCoefficients(scene: Scene, i: number): { lam: number; mu: number } {
  const a = liftRecord(scene.controls[i], scene.space);
  const b = liftRecord(scene.controls[i + 1], scene.space);
  const f = liftRecord(scene.farins[i], scene.space);
  const { lam, mu } = lstsq2(a, b, f);
  return { lam, mu };
}

function lstsq2(a: Vec, b: Vec, f: Vec): { lam: number; mu: number; resid: number } {
  const aa = dot(a, a);
  const bb = dot(b, b);
  const ab = dot(a, b);
  const af = dot(a, f);
  const bf = dot(b, f);
  const det = aa * bb - ab * ab;
  const lam = (af * bb - bf * ab) / det;
  const mu = (bf * aa - af * ab) / det;
  const r = f.map((x, i) => x - lam * a[i] - mu * b[i]);
  return { lam, mu, resid: norm(r) / Math.max(norm(f), 1e-300) };
}

/**
 * Closest point of the segment span through two representatives, clamped to
 * the open segment: the projection a dragged Farin element snaps back to.
 */
export function projectFarinOntoSegment(f: Vec, repA: Vec, repB: Vec): Vec {
  const { lam, mu } = lstsq2(repA, repB, f);
  const eps = 1e-3;
  let l = lam;
  let m = mu;
  if (l <= 0 && m <= 0) {
    l = 1;
    m = 1;
  } else if (l <= 0) {
    l = eps * Math.abs(m);
  } else if (m <= 0) {
    m = eps * Math.abs(l);
  }
  return add(scale(repA, l), scale(repB, m));
}
