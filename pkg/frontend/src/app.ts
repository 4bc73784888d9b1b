// Page wiring: one active session, one in-flight request at a time.
// The draft (pending extra constraints and point) survives rejected
// moves; only a 200 clears it.

import { ApiError, GameClient } from "./api.js";
import {
  renderBanner,
  renderChain,
  renderPointTemplates,
  renderStatus,
  renderSuggestions,
  renderTicker,
  renderTree,
} from "./render.js";
import type { ConstraintJson, MapJson, StateJson, Suggestion } from "./types.js";
import { buildViewModel } from "./viewmodel.js";

export interface AppElements {
  status: HTMLElement;
  chain: HTMLElement;
  tree: HTMLElement;
  ticker: HTMLElement;
  banner: HTMLElement;
  suggestions: HTMLElement;
  draft: HTMLElement;
  moveButton: HTMLButtonElement;
  pointSelect: HTMLSelectElement;
}

export class GameApp {
  sessionId: string | null = null;
  draftExtra: ConstraintJson[] = [];
  draftPoint: MapJson | null = null;
  private inFlight = false;
  private lastState: StateJson | null = null;

  constructor(
    private client: GameClient,
    private ui: AppElements,
  ) {}

  get state(): StateJson | null {
    return this.lastState;
  }

  async start(mode: "plain" | "strong"): Promise<void> {
    this.sessionId = await this.client.createSession(mode);
    await this.refresh();
  }

  async refresh(): Promise<void> {
    if (!this.sessionId) return;
    const state = await this.client.getState(this.sessionId);
    this.paint(state);
    const menu = await this.client.suggestions(this.sessionId);
    renderSuggestions(this.ui.suggestions, menu.suggestions, (s) => this.takeSuggestion(s));
    renderPointTemplates(this.ui.pointSelect, menu.points);
  }

  takeSuggestion(s: Suggestion): void {
    this.draftExtra = s.extra;
    this.paintDraft();
  }

  setDraft(extra: ConstraintJson[], point: MapJson | null = null): void {
    this.draftExtra = extra;
    this.draftPoint = point;
    this.paintDraft();
  }

  async playRound(): Promise<boolean> {
    if (!this.sessionId || this.inFlight) return false;
    this.inFlight = true;
    this.ui.moveButton.disabled = true;
    try {
      const state = await this.client.move(this.sessionId, this.draftExtra, this.draftPoint);
      this.draftExtra = [];
      this.draftPoint = null;
      renderBanner(this.ui.banner, null);
      this.paint(state);
      this.paintDraft();
      return true;
    } catch (err) {
      if (err instanceof ApiError) {
        renderBanner(this.ui.banner, `${err.body.error}: ${err.body.detail}`);
        this.paintDraft(); // the rejected draft stays editable
        return false;
      }
      renderBanner(this.ui.banner, `network error: ${String(err)}`);
      return false;
    } finally {
      this.inFlight = false;
      this.ui.moveButton.disabled = false;
    }
  }

  private paint(state: StateJson): void {
    this.lastState = state;
    const vm = buildViewModel(state);
    renderStatus(this.ui.status, vm);
    renderChain(this.ui.chain, vm);
    renderTree(this.ui.tree, vm.tree);
    renderTicker(this.ui.ticker, vm.witnessTicker);
  }

  private paintDraft(): void {
    this.ui.draft.textContent = JSON.stringify({
      extra: this.draftExtra,
      point: this.draftPoint,
    });
  }
}

export function bindDefaultElements(root: Document): AppElements {
  const need = (id: string) => {
    const node = root.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as HTMLElement;
  };
  return {
    status: need("status"),
    chain: need("chain"),
    tree: need("tree"),
    ticker: need("ticker"),
    banner: need("banner"),
    suggestions: need("suggestions"),
    draft: need("draft"),
    moveButton: need("move") as HTMLButtonElement,
    pointSelect: need("point") as HTMLSelectElement,
  };
}
