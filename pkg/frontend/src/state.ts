// Pure board state: a fold over (initial session, round records).
// Reloading mid-game and replaying the history reconstructs the same
// state object, which is what the round-trip tests pin down.

import type {
  Coord,
  EdgePair,
  GraphJson,
  IndefensibleError,
  RoundRecord,
  SessionView,
} from "./types.js";
import { coordKey, edgeKey } from "./types.js";

export interface Badge {
  name: string;
  ok: boolean;
  detail: string;
}

export interface BoardState {
  sessionId: string;
  strategy: string;
  graph: GraphJson;
  guards: Coord[];            // sorted, mirrors the service config exactly
  rounds: RoundRecord[];
  version: number;
  indefensible: IndefensibleError | null;
}

const sortCoords = (coords: Coord[]): Coord[] =>
  [...coords].sort((a, b) => a[0] - b[0] || a[1] - b[1]);

export function initBoard(view: SessionView): BoardState {
  const base: BoardState = {
    sessionId: view.id,
    strategy: view.strategy,
    graph: view.graph,
    guards: sortCoords(view.history.length ? firstConfig(view) : view.guards),
    rounds: [],
    version: 0,
    indefensible: null,
  };
  // fold the stored history so a mid-game refresh lands on the same state
  return view.history.reduce(applyRound, base);
}

function firstConfig(view: SessionView): Coord[] {
  // the initial configuration is the first record's config seen through
  // the inverse of its move; the service also stores it verbatim in the
  // summary of a fresh session, so only replays need this
  const first = view.history[0];
  const inverse = new Map(first.move.map(([from, to]) => [coordKey(to), from]));
  return first.config_after.map((c) => inverse.get(coordKey(c)) ?? c);
}

export function applyRound(state: BoardState, record: RoundRecord): BoardState {
  return {
    ...state,
    guards: sortCoords(record.config_after),
    rounds: [...state.rounds, record],
    version: record.version ?? state.version + 1,
    indefensible: null,
  };
}

export function applyIndefensible(
  state: BoardState,
  error: IndefensibleError,
): BoardState {
  return { ...state, indefensible: error };
}

// ---------------------------------------------------------------------------
// derived, display-only quantities (the service stays authoritative)
// ---------------------------------------------------------------------------

export function guardSet(state: BoardState): Set<string> {
  return new Set(state.guards.map(coordKey));
}

/** Edges with exactly one guarded endpoint: the attack hints. */
export function localLegalAttacks(state: BoardState): EdgePair[] {
  const guarded = guardSet(state);
  return state.graph.edges.filter(
    ([a, b]) => guarded.has(coordKey(a)) !== guarded.has(coordKey(b)),
  );
}

export function attacksMatch(state: BoardState, serverAttacks: EdgePair[]): boolean {
  const mine = new Set(localLegalAttacks(state).map(edgeKey));
  const theirs = new Set(serverAttacks.map(edgeKey));
  return mine.size === theirs.size && [...theirs].every((k) => mine.has(k));
}

export function rho(state: BoardState): { num: number; den: number } {
  const g = gcd(state.guards.length, state.graph.vertices.length);
  return {
    num: state.guards.length / g,
    den: state.graph.vertices.length / g,
  };
}

const gcd = (a: number, b: number): number => (b === 0 ? a : gcd(b, a % b));

export function isCover(state: BoardState): boolean {
  const guarded = guardSet(state);
  return state.graph.edges.every(
    ([a, b]) => guarded.has(coordKey(a)) || guarded.has(coordKey(b)),
  );
}

export function invariantBadges(state: BoardState): Badge[] {
  const badges: Badge[] = [
    {
      name: "cover",
      ok: isCover(state),
      detail: "every edge has a guarded endpoint",
    },
    {
      name: "guards",
      ok: state.rounds.every(
        (r) => r.config_after.length === state.guards.length,
      ),
      detail: `${state.guards.length} guards conserved`,
    },
  ];
  const guarded = guardSet(state);
  if (state.graph.kind === "oct8") {
    const h = rows(state.graph);
    let fullOdd = true;
    let alternated = true;
    for (let x = 0; x < cols(state.graph); x++) {
      const colGuards = [];
      for (let y = 0; y < h; y++) {
        if (guarded.has(`${x},${y}`)) colGuards.push(y);
      }
      if (x % 2 === 1 && colGuards.length !== h) fullOdd = false;
      if (x % 2 === 0) {
        if (colGuards.length < Math.ceil(h / 2)) alternated = false;
        const holes = [];
        for (let y = 0; y < h; y++) if (!guarded.has(`${x},${y}`)) holes.push(y);
        for (let i = 1; i < holes.length; i++) {
          if (holes[i] - holes[i - 1] === 1) alternated = false;
        }
      }
    }
    badges.push({ name: "odd columns full", ok: fullOdd, detail: "king-grid invariant" });
    badges.push({ name: "even columns alternated", ok: alternated, detail: "king-grid invariant" });
  }
  if (state.graph.kind === "hex3") {
    const parities = new Set(state.guards.map(([, y]) => ((y % 2) + 2) % 2));
    badges.push({
      name: "single row parity",
      ok: parities.size === 1,
      detail: "guards on alternating rows",
    });
  }
  if (state.graph.kind === "tri6" && state.strategy === "tri-tile") {
    const h = rows(state.graph);
    const w = cols(state.graph);
    const stripeOk = state.graph.vertices
      .filter(([x, y]) => x >= 3 * Math.floor(w / 3) || y >= 3 * Math.floor(h / 3))
      .every((v) => guarded.has(coordKey(v)));
    badges.push({ name: "stripe guarded", ok: stripeOk, detail: "rim vertices stay guarded" });
  }
  return badges;
}

const rows = (g: GraphJson): number =>
  Math.max(...g.vertices.map(([, y]) => y)) + 1;
const cols = (g: GraphJson): number =>
  Math.max(...g.vertices.map(([x]) => x)) + 1;
