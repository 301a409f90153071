import { describe, expect, it } from "vitest";

import {
  applyIndefensible,
  applyRound,
  attacksMatch,
  initBoard,
  invariantBadges,
  isCover,
  localLegalAttacks,
  rho,
} from "../src/state.js";
import type { RoundRecord, SessionView } from "../src/types.js";

// a 2x2 square board fixture with guards on one diagonal
const VIEW: SessionView = {
  id: "s1",
  kind: "square4",
  h: 2,
  w: 2,
  topology: "rect",
  strategy: "ham-cycle",
  state: {},
  guards: [[0, 0], [1, 1]],
  version: 0,
  created: "",
  updated: "",
  graph: {
    kind: "square4",
    h: 2,
    w: 2,
    topology: "rect",
    vertices: [[0, 0], [0, 1], [1, 0], [1, 1]],
    edges: [
      [[0, 0], [0, 1]],
      [[0, 0], [1, 0]],
      [[0, 1], [1, 1]],
      [[1, 0], [1, 1]],
    ],
  },
  history: [],
};

const ROUND: RoundRecord = {
  attack: [[0, 0], [0, 1]],
  move: [
    [[0, 0], [0, 1]],
    [[1, 1], [1, 0]],
  ],
  config_after: [[0, 1], [1, 0]],
  version: 1,
};

describe("board state", () => {
  it("initializes from a fresh session", () => {
    const s = initBoard(VIEW);
    expect(s.guards).toEqual([[0, 0], [1, 1]]);
    expect(s.rounds).toHaveLength(0);
    expect(isCover(s)).toBe(true);
    expect(rho(s)).toEqual({ num: 1, den: 2 });
  });

  it("applyRound is pure and mirrors the service config", () => {
    const s0 = initBoard(VIEW);
    const s1 = applyRound(s0, ROUND);
    expect(s0.guards).toEqual([[0, 0], [1, 1]]);      // untouched
    expect(s1.guards).toEqual([[0, 1], [1, 0]]);
    expect(s1.version).toBe(1);
    expect(s1.rounds).toHaveLength(1);
  });

  it("refresh mid-game reconstructs the identical board", () => {
    const live = applyRound(initBoard(VIEW), ROUND);
    const refreshedView: SessionView = {
      ...VIEW,
      guards: ROUND.config_after,
      version: 1,
      history: [ROUND],
    };
    const rebuilt = initBoard(refreshedView);
    expect(rebuilt.guards).toEqual(live.guards);
    expect(rebuilt.rounds).toEqual(live.rounds);
    expect(rebuilt.version).toBe(live.version);
  });

  it("computes attack hints that agree with a service list", () => {
    const s = initBoard(VIEW);
    const hints = localLegalAttacks(s);
    expect(hints).toHaveLength(4);   // diagonal guards: every edge is mixed
    expect(attacksMatch(s, hints)).toBe(true);
    expect(attacksMatch(s, hints.slice(1))).toBe(false);
  });

  it("indefensible failures land in the state for the banner", () => {
    const s = applyIndefensible(initBoard(VIEW), {
      error: "Indefensible",
      message: "no move",
      trace: { attack: [[0, 0], [0, 1]] },
    });
    expect(s.indefensible?.message).toBe("no move");
  });

  it("flags invariant badges on a non-cover", () => {
    const s0 = initBoard(VIEW);
    const broken = {
      ...s0,
      guards: [[0, 0]] as [number, number][],
    };
    const badges = invariantBadges(broken);
    const cover = badges.find((b) => b.name === "cover");
    expect(cover?.ok).toBe(false);
  });
});
