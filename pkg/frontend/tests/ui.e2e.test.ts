// @vitest-environment jsdom

/* Scripted browser session: loads the real page markup, imports the real
 * app module, and plays by dispatching clicks, with the real service
 * answering over HTTP.  Finishes by replaying the transcript the page
 * displays through the CLI and comparing results.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, expect, it } from "vitest";

import type { GraphJson, TranscriptJson } from "../src/api.js";
import { replayThroughCli, startService, type RunningService } from "./service-harness.js";

const FRONTEND_ROOT = join(dirname(fileURLToPath(import.meta.url)), "..");

let service: RunningService;

function q<T extends Element = HTMLElement>(selector: string): T {
  const node = document.querySelector<T>(selector);
  if (!node) throw new Error(`missing ${selector}`);
  return node;
}

function qa(selector: string): Element[] {
  return Array.from(document.querySelectorAll(selector));
}

function click(element: Element): void {
  element.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

async function waitFor(what: string, cond: () => boolean, timeoutMs = 15_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!cond()) {
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

function submitForm(): void {
  q<HTMLFormElement>("#new-game-form").dispatchEvent(
    new Event("submit", { bubbles: true, cancelable: true }),
  );
}

function labelButton(label: number): HTMLButtonElement {
  const buttons = qa("#picker .label-btn") as HTMLButtonElement[];
  const found = buttons.find((b) => b.textContent === String(label));
  if (!found) throw new Error(`no picker button for label ${label}`);
  return found;
}

/* Replays the graph and transcript the page displays through the CLI,
 * with the pool size taken from the displayed command, and checks the
 * result agrees with the board. */
function replayDisplayed(expectedStatus: string): void {
  const graph = JSON.parse(q<HTMLTextAreaElement>("#graph-json").value) as GraphJson;
  const transcript = JSON.parse(
    q<HTMLTextAreaElement>("#transcript-json").value,
  ) as TranscriptJson;
  const hint = q("#replay-hint").textContent ?? "";
  const labelsMatch = /--labels (\d+)/.exec(hint);
  if (!labelsMatch) throw new Error(`replay hint has no --labels: ${hint}`);
  const replayed = replayThroughCli(
    graph,
    transcript,
    Number(labelsMatch[1]),
    hint.includes("--bob-starts"),
  );
  expect(replayed.status).toBe(expectedStatus);

  const displayed: Record<string, number> = {};
  for (const vertex of qa("#board .vertex")) {
    const name = vertex.getAttribute("data-vertex");
    const label = vertex.querySelector(".vertex-label")?.textContent ?? "";
    if (name && label !== "") displayed[name] = Number(label);
  }
  expect(replayed.assignment).toEqual(displayed);
}

beforeAll(async () => {
  service = await startService();

  // the page requests relative /api paths; route them to the test server
  const realFetch = globalThis.fetch.bind(globalThis);
  globalThis.fetch = ((input: RequestInfo | URL, init?: RequestInit) => {
    const target =
      typeof input === "string" && input.startsWith("/") ? service.base + input : input;
    return realFetch(target, init);
  }) as typeof fetch;

  const html = readFileSync(join(FRONTEND_ROOT, "index.html"), "utf8");
  const body = /<body>([\s\S]*)<\/body>/.exec(html);
  if (!body) throw new Error("index.html has no body element");
  document.body.innerHTML = body[1]!;
  await import("../src/main.js");
}, 60_000);

afterAll(async () => {
  if (service) await service.stop();
});

it("plays the five-leaf star as Bob through the page and Alice wins", async () => {
  // form defaults are star:5, human as Bob, engine auto, pool = vertex count
  submitForm();
  await waitFor("board", () => qa("#board .vertex").length === 6);
  expect(qa("#transcript li")).toHaveLength(1);
  expect(q("#board .vertex-engine")).toBeDefined();
  expect(q("#status-line").textContent).toContain("your move");

  for (let round = 0; round < 3; round++) {
    const before = qa("#transcript li").length;
    const clickable = document.querySelector("#board .vertex-clickable");
    expect(clickable).not.toBeNull();
    click(clickable!);
    await waitFor("picker", () => !q<HTMLDivElement>("#picker").hidden);
    const legal = document.querySelector("#picker .label-btn.label-legal:not(:disabled)");
    expect(legal).not.toBeNull();
    click(legal!);
    const expected = Math.min(before + 2, 6);
    await waitFor(
      `transcript to reach ${expected} moves`,
      () => qa("#transcript li").length === expected,
    );
  }

  await waitFor("game end", () => q("#status-line").classList.contains("status-AliceWon"));
  expect(q("#status-line").textContent).toContain("Alice wins");
  expect(qa("#board .vertex-free")).toHaveLength(0);
  expect(qa("#board .weight-badge")).toHaveLength(5);

  replayDisplayed("AliceWon");
}, 120_000);

it("rejects a clashing move on the four-cycle, flags both edges, then finishes", async () => {
  const familySelect = q<HTMLSelectElement>("#family-kind");
  familySelect.value = "cycle";
  familySelect.dispatchEvent(new Event("change"));
  q<HTMLInputElement>("#param-a").value = "4";
  q<HTMLInputElement>("#pool-size").value = "6";
  submitForm();

  await waitFor(
    "fresh four-vertex board",
    () => qa("#board .vertex").length === 4 && qa("#transcript li").length === 1,
  );
  expect(q("#board .vertex-engine").getAttribute("data-vertex")).toBe("1");

  // human answers v2 <- 2; engine replies v3 <- 3
  click(q('#board .vertex-clickable[data-vertex="2"]'));
  await waitFor("picker for v2", () => !q<HTMLDivElement>("#picker").hidden);
  click(labelButton(2));
  await waitFor("engine reply", () => qa("#transcript li").length === 3);
  expect(q("#board .vertex-engine").getAttribute("data-vertex")).toBe("3");

  // v4 <- 4 would give edge (1,4) weight 5, clashing with edge (2,3);
  // hovering the label previews the clash before any request is sent
  click(q('#board .vertex-clickable[data-vertex="4"]'));
  await waitFor("picker for v4", () => !q<HTMLDivElement>("#picker").hidden);
  labelButton(4).dispatchEvent(new MouseEvent("mouseenter"));
  expect(qa("#board .edge-conflict")).toHaveLength(2);
  labelButton(4).dispatchEvent(new MouseEvent("mouseleave"));
  expect(qa("#board .edge-conflict")).toHaveLength(0);
  labelButton(6).dispatchEvent(new MouseEvent("mouseenter"));
  expect(qa("#board .edge-conflict")).toHaveLength(0);
  labelButton(6).dispatchEvent(new MouseEvent("mouseleave"));

  click(labelButton(4));
  await waitFor("rejection banner", () => !q<HTMLDivElement>("#banner").hidden);

  const banner = q<HTMLDivElement>("#banner");
  expect(banner.className).toContain("banner-error");
  expect(banner.textContent).toContain("weight 5");
  expect(banner.textContent).toContain("v2-v3");
  expect(banner.textContent).toContain("v1-v4");
  expect(qa("#board .edge-conflict")).toHaveLength(2);
  expect(qa("#transcript li")).toHaveLength(3);
  expect(q("#status-line").textContent).toContain("Ongoing");

  // a network failure must leave the board untouched and offer a retry
  const liveFetch = globalThis.fetch;
  globalThis.fetch = (() => Promise.reject(new TypeError("socket hang up"))) as typeof fetch;
  click(labelButton(6));
  await waitFor(
    "network-failure banner",
    () => q<HTMLDivElement>("#banner").textContent?.includes("network failure") ?? false,
  );
  expect(qa("#transcript li")).toHaveLength(3);
  expect(q("#status-line").textContent).toContain("Ongoing");
  const retry = q<HTMLButtonElement>("#banner button");
  expect(retry.textContent).toBe("Retry");

  // the picker is still open on v4; retrying label 6 completes the labeling
  globalThis.fetch = liveFetch;
  click(retry);
  await waitFor("game end", () => q("#status-line").classList.contains("status-AliceWon"));
  expect(qa("#board .edge-conflict")).toHaveLength(0);
  const weights = qa("#board .weight-badge text")
    .map((t) => t.textContent)
    .sort();
  expect(weights).toEqual(["3", "5", "7", "9"]);

  replayDisplayed("AliceWon");
}, 120_000);
