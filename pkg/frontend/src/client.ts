/** HTTP/WebSocket client: optimistic revisioned PUTs with a 75 ms debounce
 * during drags, live mesh frames filtered by revision. */

import type { ClassifyDocument, LiveFrame, MeshDocument, Scene } from "./types.js";
import { sceneSchema } from "./types.js";

export const PUT_DEBOUNCE_MS = 75;

export class EditorClient {
  private base: string;
  private ws: WebSocket | null = null;
  private putTimer: ReturnType<typeof setTimeout> | null = null;
  private putInFlight = false;
  private pendingScene: Scene | null = null;

  constructor(base = "") {
    this.base = base.replace(/\/$/, "");
  }

  async getScene(): Promise<Scene> {
    const r = await fetch(`${this.base}/scene`);
    if (!r.ok) throw new Error(`GET /scene failed: ${r.status}`);
    return sceneSchema.parse(await r.json());
  }

  async putScene(scene: Scene): Promise<{ ok: boolean; revision?: number; detail?: string; stale?: boolean }> {
    const r = await fetch(`${this.base}/scene`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(scene),
    });
    if (r.status === 409) return { ok: false, stale: true, detail: (await r.json()).detail };
    if (!r.ok) return { ok: false, detail: (await r.json()).detail };
    const body = await r.json();
    return { ok: true, revision: body.revision };
  }

  /** Debounced PUT used while dragging; only the newest scene is sent. */
  schedulePut(scene: Scene, onResult: (r: Awaited<ReturnType<EditorClient["putScene"]>>) => void): void {
    this.pendingScene = scene;
    if (this.putTimer) clearTimeout(this.putTimer);
    this.putTimer = setTimeout(() => void this.flushPut(onResult), PUT_DEBOUNCE_MS);
  }

  private async flushPut(onResult: (r: Awaited<ReturnType<EditorClient["putScene"]>>) => void): Promise<void> {
    if (this.putInFlight || !this.pendingScene) return;
    const scene = this.pendingScene;
    this.pendingScene = null;
    this.putInFlight = true;
    try {
      onResult(await this.putScene(scene));
    } finally {
      this.putInFlight = false;
      if (this.pendingScene) void this.flushPut(onResult);
    }
  }

  async sample(nt?: number, nu?: number, u_range?: [number, number]): Promise<MeshDocument> {
    const r = await fetch(`${this.base}/sample`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ nt, nu, u_range }),
    });
    if (!r.ok) throw new Error(`POST /sample failed: ${r.status}`);
    return (await r.json()) as MeshDocument;
  }

  async classify(): Promise<ClassifyDocument> {
    const r = await fetch(`${this.base}/classify`);
    if (!r.ok) throw new Error(`GET /classify failed: ${r.status}`);
    return (await r.json()) as ClassifyDocument;
  }

  connectLive(onFrame: (frame: LiveFrame) => void): void {
    const url = `${this.base.replace(/^http/, "ws") || `ws://${location.host}`}/live`;
    this.ws = new WebSocket(url);
    this.ws.onmessage = (ev) => onFrame(JSON.parse(ev.data) as LiveFrame);
    this.ws.onclose = () => setTimeout(() => this.connectLive(onFrame), 1000);
  }
}

/** Apply a live frame only if it is at least as new as the local revision. */
export function shouldApplyFrame(localRevision: number, frame: LiveFrame): boolean {
  return frame.revision >= localRevision;
}
