// DOM renderers.  Every paint is a full re-render from the view model,
// so the page is always a pure function of the last /state response.

import type { Suggestion, PointTemplate } from "./types.js";
import type { TreeView, ViewModel } from "./viewmodel.js";

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderStatus(container: HTMLElement, vm: ViewModel): void {
  container.replaceChildren(
    el("span", "mode", vm.mode),
    el("span", "round", `round ${vm.round}`),
    el("span", "turn", `turn: ${vm.turn}`),
    el("span", "status", vm.status),
  );
}

export function renderChain(container: HTMLElement, vm: ViewModel): void {
  container.replaceChildren();
  for (const entry of vm.chain) {
    const row = el("div", "chain-entry");
    row.appendChild(el("span", "chain-round", `#${entry.round}`));
    for (const text of entry.constraints) {
      row.appendChild(el("code", "constraint", text));
    }
    if (entry.certified) row.appendChild(el("span", "cert-badge", "certified"));
    container.appendChild(row);
  }
}

export function renderTree(container: HTMLElement, tree: TreeView): void {
  container.replaceChildren();
  tree.levels.forEach((level, depth) => {
    const row = el("div", "tree-level");
    row.dataset.depth = String(depth);
    for (const node of level) {
      const cell = el("div", "tree-node");
      cell.dataset.index = String(node.index);
      cell.dataset.parent = String(node.parent);
      cell.appendChild(el("span", "node-label", `${node.source} → ${node.target}`));
      const inspector = el("div", "node-inspector");
      inspector.hidden = true;
      inspector.appendChild(el("div", "inspect-source", `source: ${node.source}`));
      inspector.appendChild(el("div", "inspect-target", `target: ${node.target}`));
      cell.addEventListener("click", () => {
        inspector.hidden = !inspector.hidden;
      });
      cell.appendChild(inspector);
      row.appendChild(cell);
    }
    container.appendChild(row);
  });
}

export function renderTicker(container: HTMLElement, values: number[]): void {
  container.replaceChildren();
  values.forEach((value, i) => {
    const cell = el("span", "ticker-value", String(value));
    cell.title = `witness(${i})`;
    container.appendChild(cell);
  });
}

export function renderBanner(container: HTMLElement, message: string | null): void {
  container.replaceChildren();
  container.classList.toggle("active", message !== null);
  if (message !== null) {
    container.appendChild(el("span", "banner-text", message));
  }
}

export function renderSuggestions(
  container: HTMLElement,
  suggestions: Suggestion[],
  onPick: (s: Suggestion) => void,
): void {
  container.replaceChildren();
  for (const s of suggestions) {
    const button = el("button", `suggestion ${s.kind}`, s.label) as HTMLButtonElement;
    button.type = "button";
    button.addEventListener("click", () => onPick(s));
    container.appendChild(button);
  }
}

export function renderPointTemplates(
  select: HTMLSelectElement,
  points: PointTemplate[],
): void {
  select.replaceChildren();
  const none = document.createElement("option");
  none.value = "";
  none.textContent = "(no point)";
  select.appendChild(none);
  for (const p of points) {
    const option = document.createElement("option");
    option.value = JSON.stringify(p.map);
    option.textContent = p.expr;
    select.appendChild(option);
  }
}
