/* App wiring: form -> session, vertex click -> label picker -> move.
 *
 * The server snapshot is the single source of truth.  Every render happens
 * from a confirmed snapshot, at most one move request is in flight, and a
 * rejected or failed request leaves the board exactly as the server last
 * reported it.
 */

import {
  ApiError,
  GameClient,
  moverOf,
  type MoveJson,
  type MoveReason,
  type Snapshot,
} from "./api.js";
import { renderBoard } from "./board.js";
import { computeLayout, type Point } from "./layout.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const PARAM_ARITY: Record<string, number> = {
  path: 1,
  star: 1,
  tree: 1,
  cycle: 1,
  kpq: 2,
  tight: 1,
  fan: 1,
  grid: 2,
  sunlet: 2,
  complete: 1,
};

interface AppState {
  snap: Snapshot | null;
  layout: Point[];
  selected: number | null;
  conflictEdges: [number, number][];
  hoverConflictEdges: [number, number][];
  lastEngineMove: MoveJson | null;
  inflight: boolean;
  retryMove: MoveJson | null;
}

const client = new GameClient("");
const state: AppState = {
  snap: null,
  layout: [],
  selected: null,
  conflictEdges: [],
  hoverConflictEdges: [],
  lastEngineMove: null,
  inflight: false,
  retryMove: null,
};

const boardSvg = byId<HTMLElement>("board") as unknown as SVGSVGElement;
const bannerBox = byId<HTMLDivElement>("banner");
const pickerBox = byId<HTMLDivElement>("picker");
const statusLine = byId<HTMLDivElement>("status-line");
const transcriptList = byId<HTMLOListElement>("transcript");
const graphJson = byId<HTMLTextAreaElement>("graph-json");
const transcriptJson = byId<HTMLTextAreaElement>("transcript-json");
const replayHint = byId<HTMLElement>("replay-hint");

// ---------------------------------------------------------------------------
// banner
// ---------------------------------------------------------------------------

function clearBanner(): void {
  bannerBox.replaceChildren();
  bannerBox.hidden = true;
}

function showBanner(kind: "error" | "info", message: string, retry?: () => void): void {
  bannerBox.replaceChildren();
  bannerBox.hidden = false;
  bannerBox.className = `banner banner-${kind}`;
  const text = document.createElement("span");
  text.textContent = message;
  bannerBox.appendChild(text);
  if (retry) {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = "Retry";
    button.addEventListener("click", retry);
    bannerBox.appendChild(button);
  }
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

function describeStatus(snap: Snapshot): string {
  if (snap.status === "AliceWon") return "Alice wins: the labeling is complete and every edge weight is distinct.";
  if (snap.status === "BobWon") return "Bob wins: the labeling can no longer be completed.";
  const turn = snap.turn === snap.humanPlays ? `your move (${snap.turn})` : `engine thinking as ${snap.turn}`;
  return `Ongoing, ${turn}. Pool 1..${snap.l}, ${snap.transcript.moves.length} moves played.`;
}

function renderTranscript(snap: Snapshot): void {
  transcriptList.replaceChildren();
  snap.transcript.moves.forEach((move, i) => {
    const item = document.createElement("li");
    const mover = moverOf(i, snap.bobStarts);
    const human = mover === snap.humanPlays ? " (you)" : "";
    item.textContent = `${mover}${human}: v${move.v} ← ${move.label}`;
    transcriptList.appendChild(item);
  });
  graphJson.value = JSON.stringify(snap.graph);
  transcriptJson.value = JSON.stringify(snap.transcript, null, 2);
  replayHint.textContent =
    `esd game replay graph.json --transcript transcript.json --labels ${snap.l}` +
    (snap.bobStarts ? " --bob-starts" : "");
}

/* Pure presentation hint: which edge pairs would carry equal weights if the
 * selected vertex took this label.  Legality itself still comes only from
 * the server's legalMoves. */
function hypotheticalConflicts(snap: Snapshot, v: number, label: number): [number, number][] {
  if (new Set(Object.values(snap.assignment)).has(label)) return [];
  const weightOf = new Map<number, [number, number]>();
  for (const [a, b] of snap.graph.edges) {
    const la = snap.assignment[String(a)];
    const lb = snap.assignment[String(b)];
    if (la !== undefined && lb !== undefined) weightOf.set(la + lb, [a, b]);
  }
  const clashes: [number, number][] = [];
  for (const [a, b] of snap.graph.edges) {
    if (a !== v && b !== v) continue;
    const other = a === v ? b : a;
    const otherLabel = snap.assignment[String(other)];
    if (otherLabel === undefined) continue;
    const existing = weightOf.get(label + otherLabel);
    if (existing) clashes.push(existing, [a, b]);
  }
  return clashes;
}

function renderPicker(snap: Snapshot): void {
  pickerBox.replaceChildren();
  if (snap.status !== "ongoing" || state.selected === null) {
    pickerBox.hidden = true;
    return;
  }
  pickerBox.hidden = false;
  const heading = document.createElement("div");
  heading.className = "picker-title";
  heading.textContent = `Label for v${state.selected}`;
  pickerBox.appendChild(heading);

  const used = new Set(Object.values(snap.assignment));
  const legal = new Set(
    snap.legalMoves.filter((m) => m.v === state.selected).map((m) => m.label),
  );
  const grid = document.createElement("div");
  grid.className = "picker-grid";
  for (let label = 1; label <= snap.l; label++) {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = String(label);
    button.className = legal.has(label) ? "label-btn label-legal" : "label-btn";
    if (used.has(label)) {
      button.disabled = true;
      button.classList.add("label-used");
    }
    button.addEventListener("mouseenter", () => {
      if (state.selected === null) return;
      state.hoverConflictEdges = hypotheticalConflicts(snap, state.selected, label);
      renderBoardOnly();
    });
    button.addEventListener("mouseleave", () => {
      state.hoverConflictEdges = [];
      renderBoardOnly();
    });
    button.addEventListener("click", () => {
      void submitMove({ v: state.selected!, label });
    });
    grid.appendChild(button);
  }
  pickerBox.appendChild(grid);
  const hint = document.createElement("div");
  hint.className = "picker-hint";
  hint.textContent =
    "Highlighted labels are the server's legal moves; greyed labels are already used. " +
    "Hover a label to preview the edges that would clash.";
  pickerBox.appendChild(hint);
}

function renderBoardOnly(): void {
  const snap = state.snap;
  if (!snap) return;
  renderBoard(
    boardSvg,
    snap,
    state.layout,
    {
      selected: state.selected,
      conflictEdges: [...state.conflictEdges, ...state.hoverConflictEdges],
      lastEngineMove: state.lastEngineMove,
    },
    { onVertexClick: handleVertexClick },
  );
}

function render(): void {
  const snap = state.snap;
  if (!snap) return;
  renderBoardOnly();
  statusLine.textContent = describeStatus(snap);
  statusLine.className = `status status-${snap.status}`;
  renderPicker(snap);
  renderTranscript(snap);
}

function setSnapshot(snap: Snapshot): void {
  state.snap = snap;
  state.layout = computeLayout(snap.family, snap.graph);
  render();
}

// ---------------------------------------------------------------------------
// interaction
// ---------------------------------------------------------------------------

function handleVertexClick(v: number): void {
  const snap = state.snap;
  if (!snap || state.inflight) return;
  if (snap.status !== "ongoing" || snap.turn !== snap.humanPlays) return;
  state.selected = state.selected === v ? null : v;
  state.conflictEdges = [];
  state.hoverConflictEdges = [];
  render();
}

function describeReason(reason: MoveReason): string {
  if (reason.kind === "weight-clash" && reason.edges && reason.edges.length === 2) {
    const [a, b] = reason.edges[0]!;
    const [c, d] = reason.edges[1]!;
    return `${reason.message} (edges v${a}-v${b} and v${c}-v${d} both hit weight ${reason.weight})`;
  }
  return reason.message;
}

async function submitMove(move: MoveJson): Promise<void> {
  const snap = state.snap;
  if (!snap || state.inflight) return;
  state.inflight = true;
  state.retryMove = null;
  state.hoverConflictEdges = [];
  try {
    const resp = await client.postMove(snap.id, move);
    state.inflight = false;
    if (resp.accepted) {
      state.selected = null;
      state.conflictEdges = [];
      state.lastEngineMove = resp.engineReply;
      clearBanner();
      setSnapshot(resp.snapshot);
      return;
    }
    // rejected: the server state did not change; show why, flash conflicts
    const reason = resp.reason ?? { kind: "unknown", message: "move rejected" };
    state.conflictEdges = reason.edges ?? [];
    showBanner("error", describeReason(reason));
    setSnapshot(resp.snapshot);
  } catch (err) {
    state.inflight = false;
    if (err instanceof ApiError && err.status === 0) {
      state.retryMove = move;
      showBanner("error", err.message, () => {
        clearBanner();
        void submitMove(move);
      });
      return;
    }
    showBanner("error", err instanceof Error ? err.message : String(err));
  }
}

// ---------------------------------------------------------------------------
// new game form
// ---------------------------------------------------------------------------

function wireForm(): void {
  const form = byId<HTMLFormElement>("new-game-form");
  const familySelect = byId<HTMLSelectElement>("family-kind");
  const paramA = byId<HTMLInputElement>("param-a");
  const paramB = byId<HTMLInputElement>("param-b");
  const seedInput = byId<HTMLInputElement>("family-seed");
  const poolInput = byId<HTMLInputElement>("pool-size");
  const sideSelect = byId<HTMLSelectElement>("human-side");
  const strategySelect = byId<HTMLSelectElement>("engine-strategy");
  const bobStartsBox = byId<HTMLInputElement>("bob-starts");

  const syncParamVisibility = () => {
    const arity = PARAM_ARITY[familySelect.value] ?? 1;
    paramB.parentElement!.hidden = arity < 2;
    seedInput.parentElement!.hidden = familySelect.value !== "tree";
  };
  familySelect.addEventListener("change", syncParamVisibility);
  syncParamVisibility();

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const kind = familySelect.value;
    const arity = PARAM_ARITY[kind] ?? 1;
    const parts = [paramA.value.trim()];
    if (arity === 2) parts.push(paramB.value.trim());
    const family = kind === "grid" ? `grid:${parts.join("x")}` : `${kind}:${parts.join(",")}`;

    const req = {
      family,
      humanPlays: sideSelect.value as "Alice" | "Bob",
      bobStarts: bobStartsBox.checked,
      ...(poolInput.value.trim() ? { l: Number(poolInput.value) } : {}),
      ...(strategySelect.value !== "auto" ? { engineStrategy: strategySelect.value } : {}),
      ...(familySelect.value === "tree" && seedInput.value.trim()
        ? { seed: Number(seedInput.value) }
        : {}),
    };

    state.inflight = true;
    clearBanner();
    client
      .createSession(req)
      .then((resp) => {
        state.inflight = false;
        state.selected = null;
        state.conflictEdges = [];
        state.hoverConflictEdges = [];
        state.lastEngineMove = resp.engineOpening;
        setSnapshot(resp);
      })
      .catch((err) => {
        state.inflight = false;
        showBanner("error", err instanceof Error ? err.message : String(err));
      });
  });
}

wireForm();
showBanner("info", "Pick a graph family and start a game. You place labels; all legality comes from the server.");
