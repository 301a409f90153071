// Wire types mirroring the session service JSON schemas.

export type Coord = [number, number];
export type EdgePair = [Coord, Coord];
export type MovePair = [Coord, Coord];

export type GridKindTag = "hex3" | "square4" | "tri6" | "oct8" | "path" | "cycle";

export interface GraphJson {
  kind: GridKindTag;
  h: number;
  w: number;
  topology: "rect" | "torus";
  vertices: Coord[];
  edges: EdgePair[];
}

export interface SessionSummary {
  id: string;
  kind: GridKindTag;
  h: number;
  w: number;
  topology: string;
  strategy: string;
  state: Record<string, unknown>;
  guards: Coord[];
  version: number;
  created: string;
  updated: string;
}

export interface SessionView extends SessionSummary {
  graph: GraphJson;
  history: RoundRecord[];
}

export interface RoundRecord {
  attack: EdgePair;
  move: MovePair[];
  config_after: Coord[];
  version?: number;
}

export interface IndefensibleError {
  error: "Indefensible";
  message: string;
  trace: Record<string, unknown>;
}

export const coordKey = (c: Coord): string => `${c[0]},${c[1]}`;

export const edgeKey = (e: EdgePair): string => {
  const [a, b] = [...e].sort((p, q) => (p[0] - q[0]) || (p[1] - q[1]));
  return `${coordKey(a)}|${coordKey(b)}`;
};
