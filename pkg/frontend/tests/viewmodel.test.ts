// Fixture-based tests: the view model is a pure projection of canonical
// state JSON, and the renderers lay the tree out breadth-first.

import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import { describe, expect, it } from "vitest";

import { renderTicker, renderTree } from "../src/render.js";
import type { StateJson } from "../src/types.js";
import { buildViewModel, constraintToExpr, setToExpr } from "../src/viewmodel.js";

const fixturePath = resolve(process.cwd(), "tests/fixtures/session6.json");
const fixture = JSON.parse(readFileSync(fixturePath, "utf-8"));
const state6: StateJson = fixture.state_after_6;
const state5: StateJson = fixture.state_after_5;

describe("set expression rendering", () => {
  it("renders canonical forms", () => {
    expect(setToExpr({ m: 2, r: [0], add: [], del: [] })).toBe("0%2");
    expect(setToExpr({ m: 1, r: [0], add: [], del: [] })).toBe("omega");
    expect(setToExpr({ m: 1, r: [], add: [3, 5], del: [] })).toBe("{3,5}");
    expect(setToExpr({ m: 1, r: [], add: [], del: [] })).toBe("empty");
    expect(setToExpr({ m: 4, r: [0, 3], add: [1], del: [4] })).toBe("0%4 + 3%4 + {1} - {4}");
  });

  it("renders constraints", () => {
    expect(
      constraintToExpr({
        a: { m: 2, r: [0], add: [], del: [] },
        b: { m: 1, r: [0], add: [], del: [] },
      }),
    ).toBe("[0%2 -> omega]");
  });
});

describe("view model from the recorded session", () => {
  it("does not mutate its input", () => {
    const copy = JSON.parse(JSON.stringify(state6));
    buildViewModel(state6);
    expect(state6).toEqual(copy);
  });

  it("has six completed rounds and a seven-level tree", () => {
    const vm = buildViewModel(state6);
    expect(vm.round).toBe(6);
    expect(vm.tree.depth).toBe(6);
    expect(vm.tree.levels.length).toBe(7);
    expect(vm.chain.length).toBe(7);
  });

  it("ticker has one value per round plus the seed", () => {
    const vm = buildViewModel(state6);
    expect(vm.witnessTicker.length).toBe(7);
  });

  it("ticker is append-only across rounds", () => {
    const before = buildViewModel(state5).witnessTicker;
    const after = buildViewModel(state6).witnessTicker;
    expect(after.slice(0, before.length)).toEqual(before);
  });

  it("parent edges stay inside the previous level", () => {
    const vm = buildViewModel(state6);
    vm.tree.levels.forEach((level, depth) => {
      for (const node of level) {
        if (depth === 0) {
          expect(node.parent).toBe(-1);
        } else {
          const parents = vm.tree.levels[depth - 1].map((n) => n.index);
          expect(parents).toContain(node.parent);
        }
      }
    });
  });
});

describe("tree and ticker rendering", () => {
  it("renders one row per level and inspectable nodes", () => {
    const vm = buildViewModel(state6);
    const host = document.createElement("div");
    renderTree(host, vm.tree);
    const rows = host.querySelectorAll(".tree-level");
    expect(rows.length).toBe(7);
    const nodes = host.querySelectorAll(".tree-node");
    expect(nodes.length).toBe(state6.tree.nodes.length);
    const first = nodes[0] as HTMLElement;
    const inspector = first.querySelector(".node-inspector") as HTMLElement;
    expect(inspector.hidden).toBe(true);
    first.click();
    expect(inspector.hidden).toBe(false);
    expect(inspector.textContent).toContain("source: omega");
  });

  it("renders the ticker values in order", () => {
    const host = document.createElement("div");
    renderTicker(host, state6.witness);
    const cells = [...host.querySelectorAll(".ticker-value")].map((c) => c.textContent);
    expect(cells).toEqual(state6.witness.map(String));
  });
});
