// Wires the picker, the board, the status panel and the event stream.

import { ApiClient } from "./api.js";
import { historyPanel, indefensibleBanner, statusLine } from "./banner.js";
import { BoardView } from "./board.js";
import { attackFlow, exportTrace } from "./controller.js";
import type { BoardState } from "./state.js";
import { applyRound, initBoard } from "./state.js";
import type { EdgePair } from "./types.js";

const STRATEGY_CHOICES: Record<string, Array<[string, number, number]>> = {
  "oct-shift": [["oct8", 3, 4], ["oct8", 4, 5], ["oct8", 6, 6]],
  "hex-case": [["hex3", 4, 4], ["hex3", 6, 4], ["hex3", 8, 5]],
  "tri-tile": [["tri6", 3, 3], ["tri6", 2, 6], ["tri6", 5, 6]],
  "ham-cycle": [["square4", 4, 4], ["square4", 5, 6]],
  "shift-all": [["square4", 4, 4], ["tri6", 6, 6], ["oct8", 4, 4], ["hex3", 4, 4]],
};

export class ConsoleApp {
  private api: ApiClient;
  private board: BoardView | null = null;
  private state: BoardState | null = null;
  private unsubscribe: (() => void) | null = null;
  private busy = false;

  constructor(private root: HTMLElement, baseUrl: string) {
    this.api = new ApiClient(baseUrl);
    this.renderPicker();
  }

  private renderPicker(): void {
    const options = Object.entries(STRATEGY_CHOICES)
      .flatMap(([strategy, boards]) =>
        boards.map(([kind, h, w]) => {
          const topology = strategy === "shift-all" ? "torus" : "rect";
          const value = `${strategy}|${kind}|${h}|${w}|${topology}`;
          return `<option value="${value}">${strategy} on ${kind} ${h}x${w}${topology === "torus" ? " torus" : ""}</option>`;
        }),
      )
      .join("");
    this.root.innerHTML = `
      <div class="picker">
        <h1>Guard game console</h1>
        <p>Pick a defense strategy, then attack edges by clicking them.</p>
        <select id="setup">${options}</select>
        <label><input type="checkbox" id="hints" checked> show attackable edges</label>
        <button id="start">Start session</button>
      </div>
      <div id="status"></div>
      <div id="banner"></div>
      <div id="board"></div>
      <div id="history"></div>`;
    this.root.querySelector<HTMLButtonElement>("#start")!
      .addEventListener("click", () => void this.start());
  }

  private async start(): Promise<void> {
    const select = this.root.querySelector<HTMLSelectElement>("#setup")!;
    const [strategy, kind, h, w, topology] = select.value.split("|");
    const summary = await this.api.createSession({
      kind, h: Number(h), w: Number(w), topology, strategy,
    });
    const view = await this.api.getState(summary.id);
    this.state = initBoard(view);
    const host = this.root.querySelector<HTMLElement>("#board")!;
    host.replaceChildren();
    this.board = new BoardView(host, {
      onEdgeClick: (edge) => void this.handleClick(edge),
    });
    const hints = this.root.querySelector<HTMLInputElement>("#hints")!;
    hints.addEventListener("change", () => {
      this.board?.setHints(hints.checked);
      this.redraw();
    });
    this.unsubscribe?.();
    this.unsubscribe = this.api.subscribe(summary.id, (record) => {
      // idempotent: records already folded locally are skipped by version
      if (this.state && (record.version ?? 0) > this.state.version) {
        this.state = applyRound(this.state, record);
        this.redraw();
      }
    });
    this.redraw();
  }

  private async handleClick(edge: EdgePair): Promise<void> {
    if (!this.state || this.busy) return;
    this.busy = true;
    try {
      const before = this.state;
      const outcome = await attackFlow(this.api, before, edge);
      this.state = outcome.state;
      if (outcome.status === "played" && this.board) {
        const record = outcome.state.rounds[outcome.state.rounds.length - 1];
        this.board.animateRound(before, record, () => this.redraw());
        this.note(outcome.note);
      } else if (outcome.status === "conflict") {
        // someone else won the round: re-sync from the service
        const view = await this.api.getState(this.state.sessionId);
        this.state = initBoard(view);
        this.redraw();
        this.note("conflict: board re-synced");
      } else {
        this.redraw();
        this.note(outcome.note);
      }
    } finally {
      this.busy = false;
    }
  }

  private note(text: string): void {
    const el = this.root.querySelector<HTMLElement>("#status")!;
    el.dataset.note = text;
  }

  private redraw(): void {
    if (!this.state) return;
    this.board?.render(this.state);
    this.root.querySelector<HTMLElement>("#status")!.innerHTML =
      statusLine(this.state);
    this.root.querySelector<HTMLElement>("#history")!.innerHTML =
      historyPanel(this.state);
    const banner = this.root.querySelector<HTMLElement>("#banner")!;
    banner.innerHTML = indefensibleBanner(this.state);
    banner.querySelector<HTMLButtonElement>("#export-trace")
      ?.addEventListener("click", () => {
        const blob = new Blob([exportTrace(this.state!)],
          { type: "application/json" });
        const link = document.createElement("a");
        link.href = URL.createObjectURL(blob);
        link.download = `indefensible-${this.state!.sessionId}.json`;
        link.click();
      });
  }
}
