// The attack flow shared by mouse clicks and scripted play: validate the
// clicked edge against the service's legal list, post it, fold the
// resulting round record into the board state.  Indefensible responses
// land in the state for the banner to surface; they are the reason this
// console exists.

import { ApiClient, ServiceError } from "./api.js";
import type { BoardState } from "./state.js";
import { applyIndefensible, applyRound, attacksMatch } from "./state.js";
import type { EdgePair } from "./types.js";
import { edgeKey } from "./types.js";

export interface AttackOutcome {
  state: BoardState;
  status: "played" | "rejected" | "indefensible" | "conflict";
  note: string;
}

export async function attackFlow(
  api: ApiClient,
  state: BoardState,
  edge: EdgePair,
): Promise<AttackOutcome> {
  const legal = await api.listAttacks(state.sessionId);
  const fullyGuardedClick = !legal.some((e) => edgeKey(e) === edgeKey(edge));
  const hintsAgree = attacksMatch(state, legal);
  try {
    const record = await api.postAttack(state.sessionId, edge, state.version);
    const next = applyRound(state, record);
    const note = fullyGuardedClick
      ? "fully guarded edge: guards swapped in place"
      : hintsAgree
        ? "round played"
        : "round played (hint mismatch against service list)";
    return { state: next, status: "played", note };
  } catch (err) {
    if (err instanceof ServiceError && err.isIndefensible) {
      return {
        state: applyIndefensible(state, err.indefensible!),
        status: "indefensible",
        note: err.message,
      };
    }
    if (err instanceof ServiceError && err.isConflict) {
      return { state, status: "conflict", note: err.message };
    }
    if (err instanceof ServiceError) {
      return { state, status: "rejected", note: err.message };
    }
    throw err;
  }
}

/** Exportable JSON for a surfaced strategy failure. */
export function exportTrace(state: BoardState): string {
  return JSON.stringify(
    {
      session: state.sessionId,
      strategy: state.strategy,
      rounds_played: state.rounds.length,
      failure: state.indefensible,
      history_tail: state.rounds.slice(-10),
    },
    null,
    2,
  );
}
