// Canonical JSON shapes of the service protocol.  The UI never computes
// with these beyond projecting them into text; all mathematics stays on
// the server.

export interface SetJson {
  m: number;
  r: number[];
  add: number[];
  del: number[];
}

export interface ConstraintJson {
  a: SetJson;
  b: SetJson;
}

export interface PieceJson {
  dom: SetJson;
  a: number;
  d: number;
  b: number;
  e: number;
}

export interface MapJson {
  pieces: PieceJson[];
  table: Record<string, number>;
}

export interface ChainEntryJson {
  box: ConstraintJson[];
  cert: number[] | null;
}

export interface TreeNodeJson {
  c: SetJson;
  d: SetJson;
  parent: number;
}

export interface TreeJson {
  nodes: TreeNodeJson[];
}

export interface HistoryEntryJson {
  player: "E" | "NE";
  extra?: ConstraintJson[];
  point?: MapJson | null;
}

export interface StateJson {
  mode: "plain" | "strong";
  turn: "E" | "NE";
  status: "ongoing" | "abandoned";
  round: number;
  chain: ChainEntryJson[];
  history: HistoryEntryJson[];
  tree: TreeJson;
  witness: number[];
}

export interface Suggestion {
  kind: "stall" | "split" | "shrink";
  label: string;
  extra: ConstraintJson[];
}

export interface PointTemplate {
  expr: string;
  map: MapJson;
}

export interface SuggestionsResponse {
  suggestions: Suggestion[];
  points: PointTemplate[];
}

export interface ServiceError {
  error: string;
  detail: string;
}
