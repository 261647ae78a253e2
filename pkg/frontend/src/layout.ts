/* Vertex placement per graph family, in unit-square coordinates.
 *
 * The board scales these into its viewBox; everything here is pure geometry
 * so it can be unit tested without a DOM.  Index i of the returned array is
 * the position of vertex i+1 (vertices are 1-based everywhere else).
 */

import type { FamilyRef, GraphJson } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

const CX = 0.5;
const CY = 0.5;
const MARGIN = 0.08;

function onCircle(index: number, count: number, radius: number, cx = CX, cy = CY): Point {
  const angle = (2 * Math.PI * index) / count - Math.PI / 2;
  return { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
}

function spread(index: number, count: number): number {
  if (count <= 1) return 0.5;
  return MARGIN + ((1 - 2 * MARGIN) * index) / (count - 1);
}

function circleLayout(n: number): Point[] {
  return Array.from({ length: n }, (_, i) => onCircle(i, n, 0.42));
}

function pathLayout(n: number): Point[] {
  return Array.from({ length: n }, (_, i) => ({ x: spread(i, n), y: 0.5 }));
}

function starLayout(n: number): Point[] {
  // vertex 1 is the hub, the q leaves sit on a circle around it
  const pts: Point[] = [{ x: CX, y: CY }];
  for (let i = 0; i < n - 1; i++) pts.push(onCircle(i, n - 1, 0.4));
  return pts;
}

function columnsLayout(leftCount: number, rightCount: number): Point[] {
  const pts: Point[] = [];
  for (let i = 0; i < leftCount; i++) pts.push({ x: 0.25, y: spread(i, leftCount) });
  for (let j = 0; j < rightCount; j++) pts.push({ x: 0.75, y: spread(j, rightCount) });
  return pts;
}

function gridLayout(k: number, rows: number): Point[] {
  // row-major numbering: vertex v sits at column (v-1) % k, row (v-1) / k
  const pts: Point[] = [];
  for (let v = 0; v < k * rows; v++) {
    const col = v % k;
    const row = Math.floor(v / k);
    pts.push({ x: spread(col, k), y: spread(row, rows) });
  }
  return pts;
}

function fanLayout(n: number): Point[] {
  // vertices 1..n-1 form the path, drawn on an upper arc; vertex n is the
  // hub below, adjacent to all of them
  const pts: Point[] = [];
  const arcCount = n - 1;
  for (let i = 0; i < arcCount; i++) {
    const t = arcCount === 1 ? 0.5 : i / (arcCount - 1);
    const angle = Math.PI * (1 - t);
    pts.push({ x: CX + 0.42 * Math.cos(angle), y: 0.62 - 0.5 * Math.sin(angle) });
  }
  pts.push({ x: CX, y: 0.88 });
  return pts;
}

function sunletLayout(k: number, p: number): Point[] {
  // cycle heads at (i-1)*p+1 on an inner ring, their attached paths walking
  // outward along the same spoke
  const pts: Point[] = new Array<Point>(k * p);
  const inner = 0.18;
  const outer = 0.45;
  for (let i = 0; i < k; i++) {
    const angle = (2 * Math.PI * i) / k - Math.PI / 2;
    for (let j = 0; j < p; j++) {
      const r = p === 1 ? 0.36 : inner + ((outer - inner) * j) / (p - 1);
      pts[i * p + j] = { x: CX + r * Math.cos(angle), y: CY + r * Math.sin(angle) };
    }
  }
  return pts;
}

function layeredLayout(graph: GraphJson): Point[] {
  // breadth-first layers from vertex 1 (restarting on any unreached vertex),
  // suits trees and is a sane fallback for arbitrary graphs
  const n = graph.n;
  const adjacency: number[][] = Array.from({ length: n + 1 }, () => []);
  for (const [u, v] of graph.edges) {
    adjacency[u]!.push(v);
    adjacency[v]!.push(u);
  }
  const depth = new Array<number>(n + 1).fill(-1);
  for (let root = 1; root <= n; root++) {
    if (depth[root] !== -1) continue;
    depth[root] = 0;
    const queue = [root];
    while (queue.length > 0) {
      const u = queue.shift()!;
      for (const v of adjacency[u]!.slice().sort((a, b) => a - b)) {
        if (depth[v] === -1) {
          depth[v] = depth[u]! + 1;
          queue.push(v);
        }
      }
    }
  }
  const maxDepth = Math.max(...depth.slice(1));
  const layers: number[][] = Array.from({ length: maxDepth + 1 }, () => []);
  for (let v = 1; v <= n; v++) layers[depth[v]!]!.push(v);
  const pts = new Array<Point>(n);
  for (let d = 0; d <= maxDepth; d++) {
    const layer = layers[d]!;
    layer.forEach((v, i) => {
      pts[v - 1] = {
        x: spread(i, layer.length),
        y: maxDepth === 0 ? 0.5 : spread(d, maxDepth + 1),
      };
    });
  }
  return pts;
}

export function computeLayout(family: FamilyRef | null, graph: GraphJson): Point[] {
  const n = graph.n;
  if (n === 1) return [{ x: CX, y: CY }];
  if (family) {
    const [a, b] = [family.params[0] ?? 0, family.params[1] ?? 0];
    switch (family.kind) {
      case "cycle":
      case "complete":
        return circleLayout(n);
      case "path":
        return pathLayout(n);
      case "star":
        return starLayout(n);
      case "kpq":
        return columnsLayout(a, b);
      case "tight":
        return columnsLayout(2, n - 2);
      case "grid":
        return gridLayout(a, b);
      case "fan":
        return fanLayout(n);
      case "sunlet":
        return sunletLayout(a, b);
      case "tree":
        return layeredLayout(graph);
      default:
        break;
    }
  }
  return layeredLayout(graph);
}
