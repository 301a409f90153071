// Board projections: lattice coordinates to pixel positions per kind.
// Square and king boards render on a plain square lattice, triangular
// boards are sheared so the (1,1) diagonal becomes a unit edge, and
// hexagonal boards use a brick-wall layout in which every slanted edge
// is one brick-joint long.

import type { Coord, GridKindTag } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

const HEX_ROW_OFFSET = [0, -1, -1, 0];

export function project(kind: GridKindTag, c: Coord, scale = 40): Point {
  const [x, y] = c;
  switch (kind) {
    case "tri6":
      return { x: (x - y / 2) * scale, y: -y * scale * 0.866 };
    case "hex3":
      return { x: (2 * x + HEX_ROW_OFFSET[((y % 4) + 4) % 4]) * scale, y: -y * scale };
    default:
      return { x: x * scale, y: -y * scale };
  }
}

export interface ViewBox {
  minX: number;
  minY: number;
  width: number;
  height: number;
}

export function viewBox(kind: GridKindTag, vertices: Coord[], scale = 40, pad = 30): ViewBox {
  const points = vertices.map((v) => project(kind, v, scale));
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const minX = Math.min(...xs) - pad;
  const minY = Math.min(...ys) - pad;
  return {
    minX,
    minY,
    width: Math.max(...xs) + pad - minX,
    height: Math.max(...ys) + pad - minY,
  };
}
