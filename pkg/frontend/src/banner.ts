// Pure HTML builders for the status panel, so they stay testable off-DOM.

import type { BoardState } from "./state.js";
import { invariantBadges, rho } from "./state.js";

const escapeHtml = (s: string): string =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function indefensibleBanner(state: BoardState): string {
  if (!state.indefensible) return "";
  const failure = state.indefensible;
  return [
    '<div class="indefensible-banner" role="alert">',
    "<strong>INDEFENSIBLE</strong> — the defense strategy failed. ",
    `<span>${escapeHtml(failure.message)}</span>`,
    `<pre class="trace">${escapeHtml(JSON.stringify(failure.trace, null, 2))}</pre>`,
    '<button id="export-trace">Export trace</button>',
    "</div>",
  ].join("");
}

export function statusLine(state: BoardState): string {
  const r = rho(state);
  const badges = invariantBadges(state)
    .map(
      (b) =>
        `<span class="badge ${b.ok ? "ok" : "broken"}" title="${escapeHtml(b.detail)}">${escapeHtml(b.name)}</span>`,
    )
    .join(" ");
  return (
    `rounds survived: <b>${state.rounds.length}</b> · guards: <b>${state.guards.length}</b>` +
    ` · coverage ratio: <b>${r.num}/${r.den}</b> · ${badges}`
  );
}

export function historyPanel(state: BoardState): string {
  const items = state.rounds
    .slice(-12)
    .map((record, i) => {
      const [[ax, ay], [bx, by]] = record.attack;
      const idx = state.rounds.length - Math.min(12, state.rounds.length) + i + 1;
      return `<li>#${idx} attack (${ax},${ay})–(${bx},${by}), ${record.move.length} guards moved</li>`;
    })
    .join("");
  return `<ol class="history">${items}</ol>`;
}
