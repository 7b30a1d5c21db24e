/** Height-labeled top view: the projected rulings drawn in the x1x2-plane
 * with each control/Farin element annotated by its parenthesized height. */

import { heightLabel } from "./format.js";
import { elementPoint } from "./geometry.js";
import type { MeshDocument, Scene, Selection } from "./types.js";

export interface TopViewOptions {
  width: number;
  height: number;
  margin: number;
}

const DEFAULTS: TopViewOptions = { width: 560, height: 560, margin: 40 };

interface Box {
  lo: [number, number];
  hi: [number, number];
}

function bounds(mesh: MeshDocument | null, scene: Scene): Box {
  const pts: number[][] = [];
  if (mesh) for (const row of mesh.vertices) for (const v of row) pts.push(v);
  for (const r of [...scene.controls, ...scene.farins]) pts.push(elementPoint(r));
  if (pts.length === 0) return { lo: [-1, -1], hi: [1, 1] };
  const xs = pts.map((p) => p[0]);
  const ys = pts.map((p) => p[1]);
  return {
    lo: [Math.min(...xs), Math.min(...ys)],
    hi: [Math.max(...xs), Math.max(...ys)],
  };
}

export class TopView {
  readonly svg: SVGSVGElement;
  private opts: TopViewOptions;
  private box: Box = { lo: [-1, -1], hi: [1, 1] };
  onSelect: ((sel: Selection) => void) | null = null;

  constructor(opts: Partial<TopViewOptions> = {}) {
    this.opts = { ...DEFAULTS, ...opts };
    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svg.setAttribute("width", String(this.opts.width));
    this.svg.setAttribute("height", String(this.opts.height));
    this.svg.setAttribute("class", "topview");
  }

  project(p: number[]): [number, number] {
    const { width, height, margin } = this.opts;
    const sx = (width - 2 * margin) / Math.max(this.box.hi[0] - this.box.lo[0], 1e-9);
    const sy = (height - 2 * margin) / Math.max(this.box.hi[1] - this.box.lo[1], 1e-9);
    const s = Math.min(sx, sy);
    return [
      margin + (p[0] - this.box.lo[0]) * s,
      height - margin - (p[1] - this.box.lo[1]) * s,
    ];
  }

  render(scene: Scene, mesh: MeshDocument | null, selection: Selection): void {
    this.box = bounds(mesh, scene);
    const parts: string[] = [];
    if (mesh) {
      for (const row of mesh.vertices) {
        const a = this.project(row[0]);
        const b = this.project(row[row.length - 1]);
        parts.push(
          `<line x1="${a[0]}" y1="${a[1]}" x2="${b[0]}" y2="${b[1]}" class="ruling"/>`,
        );
      }
      if (mesh.curve) {
        const d = mesh.curve
          .map((p, i) => `${i === 0 ? "M" : "L"}${this.project(p).join(",")}`)
          .join(" ");
        parts.push(`<path d="${d}" class="stripcurve" fill="none"/>`);
      }
    }
    const marker = (p: number[], label: string, cls: string, sel: boolean) => {
      const [x, y] = this.project(p);
      parts.push(`<circle cx="${x}" cy="${y}" r="${sel ? 7 : 5}" class="${cls}${sel ? " selected" : ""}"/>`);
      parts.push(`<text x="${x + 9}" y="${y - 7}" class="heightlabel">${label}</text>`);
    };
    scene.controls.forEach((r, i) =>
      marker(elementPoint(r), heightLabel(r.height ?? 0), "control",
             selection?.kind === "control" && selection.index === i));
    scene.farins.forEach((r, i) =>
      marker(elementPoint(r), heightLabel(r.height ?? 0), "farin",
             selection?.kind === "farin" && selection.index === i));
    this.svg.innerHTML = parts.join("");
    this.attachHits(scene);
  }

  private attachHits(scene: Scene): void {
    const circles = Array.from(this.svg.querySelectorAll("circle"));
    circles.forEach((c, idx) => {
      const isControl = idx < scene.controls.length;
      const index = isControl ? idx : idx - scene.controls.length;
      c.addEventListener("pointerdown", (ev) => {
        ev.stopPropagation();
        this.onSelect?.({ kind: isControl ? "control" : "farin", index });
      });
    });
  }

  /** Screen-space delta to world-plane delta for drag handling. */
  dragDelta(dx: number, dy: number): [number, number, number] {
    const { width, margin } = this.opts;
    const s = (width - 2 * margin) / Math.max(this.box.hi[0] - this.box.lo[0], 1e-9);
    return [dx / s, -dy / s, 0];
  }
}
