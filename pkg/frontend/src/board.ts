// SVG board rendering: vertices, guard markers, edge hit targets and a
// short slide animation along each move arrow.  Pure DOM, no framework.

import { project, viewBox } from "./layout.js";
import type { BoardState } from "./state.js";
import { localLegalAttacks } from "./state.js";
import type { Coord, EdgePair, RoundRecord } from "./types.js";
import { coordKey, edgeKey } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SCALE = 40;

export interface BoardCallbacks {
  onEdgeClick: (edge: EdgePair) => void;
}

export class BoardView {
  private svg: SVGSVGElement;
  private guardLayer: SVGGElement;
  private hintsOn = true;

  constructor(private host: HTMLElement, private callbacks: BoardCallbacks) {
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.guardLayer = document.createElementNS(SVG_NS, "g");
    this.host.appendChild(this.svg);
  }

  setHints(on: boolean): void {
    this.hintsOn = on;
  }

  render(state: BoardState): void {
    const { kind } = state.graph;
    const vb = viewBox(kind, state.graph.vertices, SCALE);
    this.svg.setAttribute(
      "viewBox",
      `${vb.minX} ${vb.minY} ${vb.width} ${vb.height}`,
    );
    this.svg.setAttribute("width", String(Math.min(900, vb.width)));
    this.svg.replaceChildren();

    const legal = new Set(localLegalAttacks(state).map(edgeKey));
    for (const edge of state.graph.edges) {
      const [a, b] = edge;
      const pa = project(kind, a, SCALE);
      const pb = project(kind, b, SCALE);
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(pa.x));
      line.setAttribute("y1", String(pa.y));
      line.setAttribute("x2", String(pb.x));
      line.setAttribute("y2", String(pb.y));
      const attackable = legal.has(edgeKey(edge));
      line.setAttribute("class",
        attackable && this.hintsOn ? "edge attackable" : "edge");
      line.addEventListener("click", () => this.callbacks.onEdgeClick(edge));
      this.svg.appendChild(line);
    }

    for (const v of state.graph.vertices) {
      const p = project(kind, v, SCALE);
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(p.x));
      dot.setAttribute("cy", String(p.y));
      dot.setAttribute("r", "5");
      dot.setAttribute("class", "vertex");
      this.svg.appendChild(dot);
    }

    this.guardLayer = document.createElementNS(SVG_NS, "g");
    for (const g of state.guards) {
      this.guardLayer.appendChild(this.guardMarker(kind, g));
    }
    this.svg.appendChild(this.guardLayer);
  }

  private guardMarker(kind: BoardState["graph"]["kind"], at: Coord): SVGCircleElement {
    const p = project(kind, at, SCALE);
    const marker = document.createElementNS(SVG_NS, "circle");
    marker.setAttribute("cx", String(p.x));
    marker.setAttribute("cy", String(p.y));
    marker.setAttribute("r", "9");
    marker.setAttribute("class", "guard");
    marker.dataset.at = coordKey(at);
    return marker;
  }

  /** Slide each guard marker from its source to its target, then settle. */
  animateRound(state: BoardState, record: RoundRecord, done: () => void): void {
    const kind = state.graph.kind;
    const markers = new Map<string, SVGCircleElement>();
    for (const el of this.guardLayer.querySelectorAll<SVGCircleElement>("circle")) {
      markers.set(el.dataset.at ?? "", el);
    }
    for (const [from, to] of record.move) {
      const marker = markers.get(coordKey(from));
      if (!marker) continue;
      const target = project(kind, to, SCALE);
      marker.style.transition = "cx 300ms ease, cy 300ms ease";
      marker.setAttribute("cx", String(target.x));
      marker.setAttribute("cy", String(target.y));
    }
    window.setTimeout(done, 320);
  }
}
