/* SVG board rendering.
 *
 * Renders exactly one confirmed server snapshot at a time: the caller hands
 * in the snapshot plus transient view state (selection, conflict edges to
 * flash) and this module redraws from scratch.  No game logic lives here.
 */

import type { MoveJson, Snapshot } from "./api.js";
import type { Point } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 100;
const PAD = 8;

export interface BoardViewState {
  selected: number | null;
  conflictEdges: [number, number][];
  lastEngineMove: MoveJson | null;
}

export interface BoardCallbacks {
  onVertexClick: (v: number) => void;
}

function park(p: Point): { x: number; y: number } {
  return { x: PAD + p.x * (SIZE - 2 * PAD), y: PAD + p.y * (SIZE - 2 * PAD) };
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

function edgeKey(u: number, v: number): string {
  return u < v ? `${u}-${v}` : `${v}-${u}`;
}

export function renderBoard(
  svg: SVGSVGElement,
  snap: Snapshot,
  layout: Point[],
  view: BoardViewState,
  callbacks: BoardCallbacks,
): void {
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  svg.replaceChildren();

  const conflicts = new Set(view.conflictEdges.map(([u, v]) => edgeKey(u, v)));
  const humansTurn = snap.status === "ongoing" && snap.turn === snap.humanPlays;

  // edges first so vertices draw on top
  for (const [u, v] of snap.graph.edges) {
    const pu = park(layout[u - 1]!);
    const pv = park(layout[v - 1]!);
    const lu = snap.assignment[String(u)];
    const lv = snap.assignment[String(v)];
    const complete = lu !== undefined && lv !== undefined;
    const line = el("line", {
      x1: pu.x.toFixed(2),
      y1: pu.y.toFixed(2),
      x2: pv.x.toFixed(2),
      y2: pv.y.toFixed(2),
      class: [
        "edge",
        complete ? "edge-complete" : "",
        conflicts.has(edgeKey(u, v)) ? "edge-conflict" : "",
      ]
        .filter(Boolean)
        .join(" "),
    });
    svg.appendChild(line);
    if (complete) {
      const mx = (pu.x + pv.x) / 2;
      const my = (pu.y + pv.y) / 2;
      const badge = el("g", { class: "weight-badge" });
      badge.appendChild(
        el("circle", { cx: mx.toFixed(2), cy: my.toFixed(2), r: "3.1" }),
      );
      const text = el("text", {
        x: mx.toFixed(2),
        y: (my + 1.1).toFixed(2),
        "text-anchor": "middle",
      });
      text.textContent = String(lu! + lv!);
      badge.appendChild(text);
      svg.appendChild(badge);
    }
  }

  for (let v = 1; v <= snap.graph.n; v++) {
    const p = park(layout[v - 1]!);
    const label = snap.assignment[String(v)];
    const free = label === undefined;
    const classes = ["vertex"];
    if (free) classes.push("vertex-free");
    if (free && humansTurn) classes.push("vertex-clickable");
    if (view.selected === v) classes.push("vertex-selected");
    if (view.lastEngineMove && view.lastEngineMove.v === v) classes.push("vertex-engine");

    const group = el("g", { class: classes.join(" "), "data-vertex": String(v) });
    group.appendChild(el("circle", { cx: p.x.toFixed(2), cy: p.y.toFixed(2), r: "4.4" }));

    const name = el("text", {
      x: p.x.toFixed(2),
      y: (p.y - 5.6).toFixed(2),
      "text-anchor": "middle",
      class: "vertex-name",
    });
    name.textContent = `v${v}`;
    group.appendChild(name);

    const badge = el("text", {
      x: p.x.toFixed(2),
      y: (p.y + 1.6).toFixed(2),
      "text-anchor": "middle",
      class: "vertex-label",
    });
    badge.textContent = free ? "" : String(label);
    group.appendChild(badge);

    if (free) {
      group.addEventListener("click", () => callbacks.onVertexClick(v));
    }
    svg.appendChild(group);
  }
}
