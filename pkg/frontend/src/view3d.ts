/** Orbitable 3D view of the sampled strip with striction/curve overlay. */

import * as THREE from "three";

import type { CameraState } from "./state.js";
import type { MeshDocument } from "./types.js";

export class View3D {
  readonly canvas: HTMLCanvasElement;
  private renderer: THREE.WebGLRenderer;
  private scene3: THREE.Scene;
  private camera: THREE.PerspectiveCamera;
  private surface: THREE.Object3D | null = null;

  constructor(width = 560, height = 560) {
    this.canvas = document.createElement("canvas");
    this.renderer = new THREE.WebGLRenderer({ canvas: this.canvas, antialias: true });
    this.renderer.setSize(width, height);
    this.scene3 = new THREE.Scene();
    this.scene3.background = new THREE.Color(0xfafafa);
    this.camera = new THREE.PerspectiveCamera(45, width / height, 0.01, 100);
    const light = new THREE.DirectionalLight(0xffffff, 2.0);
    light.position.set(3, 4, 5);
    this.scene3.add(light, new THREE.AmbientLight(0xffffff, 0.6));
    this.scene3.add(new THREE.AxesHelper(1.5));
  }

  updateCamera(cam: CameraState): void {
    const { theta, phi, distance, target } = cam;
    this.camera.position.set(
      target[0] + distance * Math.sin(phi) * Math.cos(theta),
      target[1] + distance * Math.sin(phi) * Math.sin(theta),
      target[2] + distance * Math.cos(phi),
    );
    this.camera.up.set(0, 0, 1);
    this.camera.lookAt(...target);
  }

  setMesh(doc: MeshDocument): void {
    if (this.surface) this.scene3.remove(this.surface);
    const group = new THREE.Group();
    const nt = doc.vertices.length;
    const nu = doc.vertices[0]?.length ?? 0;
    const pos: number[] = [];
    for (let i = 0; i + 1 < nt; i++) {
      for (let j = 0; j + 1 < nu; j++) {
        const q = [doc.vertices[i][j], doc.vertices[i][j + 1],
                   doc.vertices[i + 1][j + 1], doc.vertices[i + 1][j]];
        pos.push(...q[0], ...q[1], ...q[2], ...q[0], ...q[2], ...q[3]);
      }
    }
    const geo = new THREE.BufferGeometry();
    geo.setAttribute("position", new THREE.Float32BufferAttribute(pos, 3));
    geo.computeVertexNormals();
    group.add(new THREE.Mesh(geo, new THREE.MeshStandardMaterial({
      color: 0x4a7dbd, side: THREE.DoubleSide, transparent: true, opacity: 0.85,
    })));
    for (const row of doc.vertices) {
      const g = new THREE.BufferGeometry().setFromPoints(
        [row[0], row[row.length - 1]].map((p) => new THREE.Vector3(...p)));
      group.add(new THREE.Line(g, new THREE.LineBasicMaterial({ color: 0x888888 })));
    }
    if (doc.curve) {
      const g = new THREE.BufferGeometry().setFromPoints(
        doc.curve.map((p) => new THREE.Vector3(...p)));
      group.add(new THREE.Line(g, new THREE.LineBasicMaterial({ color: 0xcc3333 })));
    }
    if (doc.boundaries) {
      for (const b of doc.boundaries) {
        const g = new THREE.BufferGeometry().setFromPoints(
          b.map((p) => new THREE.Vector3(...p)));
        group.add(new THREE.Line(g, new THREE.LineBasicMaterial({ color: 0x33aa55 })));
      }
    }
    this.surface = group;
    this.scene3.add(group);
  }

  render(): void {
    this.renderer.render(this.scene3, this.camera);
  }
}
