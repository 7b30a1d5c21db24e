import { z } from "zod";

export const vec3 = z.tuple([z.number(), z.number(), z.number()]);

export const recordSchema = z
  .object({
    dir: z.array(z.number()).length(3),
    mom: z.array(z.number()).length(3),
    ell: z.number().optional(),
    ell2: z.number().optional(),
    height: z.number().default(0),
  })
  .passthrough();

export const sceneSchema = z
  .object({
    version: z.number().int(),
    revision: z.number().int().default(0),
    space: z.enum(["P5", "P6", "P7"]),
    metadata: z.record(z.any()).default({}),
    controls: z.array(recordSchema).min(2),
    farins: z.array(recordSchema),
    sampling: z.object({
      nt: z.number().int().min(2),
      nu: z.number().int().min(2),
      u_range: z.tuple([z.number(), z.number()]),
    }),
  })
  .passthrough();

export type ElementRecord = z.infer<typeof recordSchema>;
export type Scene = z.infer<typeof sceneSchema>;

export interface MeshRuling {
  t: number;
  dir: number[];
  mom: number[];
  height: number;
  point?: number[];
  boundary?: number[][];
  ell?: number;
  ell2?: number;
}

export interface MeshDocument {
  space: string;
  nt: number;
  nu: number;
  u_range: [number, number];
  rulings: MeshRuling[];
  vertices: number[][][];
  curve?: number[][];
  boundaries?: number[][][];
  notes: string[];
}

export interface ClassifySegment {
  index: number;
  tag: string;
  reps: number[][];
  vertex?: number[];
  circle?: { center: number[]; radius: number };
  gamma?: { h: number; n: number; alpha: number; rot: number[][]; trans: number[] };
}

export interface ClassifyDocument {
  revision: number;
  segments: ClassifySegment[];
}

export interface LiveFrame {
  revision: number;
  mesh: MeshDocument | { error: string };
}

export type Selection =
  | { kind: "control"; index: number }
  | { kind: "farin"; index: number }
  | null;
