// Pure projections from canonical state JSON to what the page shows.
// No math happens here: set text is a syntactic rendering of the
// canonical JSON, and the tree layout just replays the breadth-first
// serialization order.

import type { ConstraintJson, SetJson, StateJson, TreeJson } from "./types.js";

export function setToExpr(s: SetJson): string {
  if (s.r.length === 0 && s.add.length === 0) return "empty";
  if (s.r.length === 0) return `{${s.add.join(",")}}`;
  let text: string;
  if (s.m === 1) {
    text = "omega";
  } else {
    text = s.r.map((r) => `${r}%${s.m}`).join(" + ");
  }
  if (s.add.length > 0) text += ` + {${s.add.join(",")}}`;
  if (s.del.length > 0) text += ` - {${s.del.join(",")}}`;
  return text;
}

export function constraintToExpr(c: ConstraintJson): string {
  return `[${setToExpr(c.a)} -> ${setToExpr(c.b)}]`;
}

export interface TreeNodeView {
  index: number;
  parent: number;
  source: string;
  target: string;
}

export interface TreeView {
  depth: number; // index of the deepest level (root level is 0)
  levels: TreeNodeView[][];
}

export function buildTreeView(tree: TreeJson): TreeView {
  const depths: number[] = [];
  const levels: TreeNodeView[][] = [];
  tree.nodes.forEach((node, i) => {
    const depth = node.parent === -1 ? 0 : depths[node.parent] + 1;
    depths.push(depth);
    while (levels.length <= depth) levels.push([]);
    levels[depth].push({
      index: i,
      parent: node.parent,
      source: setToExpr(node.c),
      target: setToExpr(node.d),
    });
  });
  return { depth: levels.length - 1, levels };
}

export interface ChainEntryView {
  round: number;
  constraints: string[];
  certified: boolean;
}

export interface ViewModel {
  mode: string;
  turn: string;
  status: string;
  round: number;
  chain: ChainEntryView[];
  tree: TreeView;
  witnessTicker: number[];
}

export function buildViewModel(state: StateJson): ViewModel {
  return {
    mode: state.mode,
    turn: state.turn,
    status: state.status,
    round: state.round,
    chain: state.chain.map((entry, i) => ({
      round: i,
      constraints: entry.box.map(constraintToExpr),
      certified: entry.cert !== null,
    })),
    tree: buildTreeView(state.tree),
    witnessTicker: state.witness,
  };
}
