/** View state and its pure transitions: breadcrumb navigation, per-edge
 * display modes, table sorting.  Rendering is a function of
 * (HAGraph JSON, ViewState), so every transition here is side-effect free
 * and unit-testable without a DOM. */

import type { HAGraphJson } from "./types.js";

export type EdgeMode = "graph" | "data";

export interface SortState {
  column: number;
  descending: boolean;
}

export interface ViewState {
  /** id of the one current HA-graph */
  current: string;
  /** lineage of HA-graph ids, root first, current last */
  breadcrumb: string[];
  /** per-visual-edge display mode; default "graph" when absent */
  edgeModes: Record<string, EdgeMode>;
  /** labels hidden until pointer-over when true */
  hoverEnabled: boolean;
  /** per-edge data-table sort */
  sorts: Record<string, SortState>;
  /** monotone token; responses carrying an older token are stale */
  epoch: number;
}

export function initialState(rootId: string): ViewState {
  return {
    current: rootId,
    breadcrumb: [rootId],
    edgeModes: {},
    hoverEnabled: false,
    sorts: {},
    epoch: 0,
  };
}

/** Key identifying one visual (undirected) edge: smaller vid first. */
export function edgeKey(a: number, b: number): string {
  return a <= b ? `${a}-${b}` : `${b}-${a}`;
}

/** A zoom answered: push the child onto the breadcrumb. The child must
 * point back at the current graph, keeping the breadcrumb a parent-id
 * path. Per-edge modes/sorts reset — they belong to the old scene. */
export function enterChild(s: ViewState, child: HAGraphJson): ViewState {
  if (child.parent_id !== s.current) {
    throw new Error(
      `breadcrumb break: child ${child.id} has parent ${child.parent_id}, ` +
        `current is ${s.current}`,
    );
  }
  return {
    ...s,
    current: child.id,
    breadcrumb: [...s.breadcrumb, child.id],
    edgeModes: {},
    sorts: {},
    epoch: s.epoch + 1,
  };
}

/** Back navigation: pop to the parent (no-op at the root). */
export function goBack(s: ViewState): ViewState {
  if (s.breadcrumb.length < 2) return s;
  const breadcrumb = s.breadcrumb.slice(0, -1);
  return {
    ...s,
    current: breadcrumb[breadcrumb.length - 1],
    breadcrumb,
    edgeModes: {},
    sorts: {},
    epoch: s.epoch + 1,
  };
}

/** Jump to any ancestor on the breadcrumb (crumb click). */
export function goToCrumb(s: ViewState, id: string): ViewState {
  const at = s.breadcrumb.indexOf(id);
  if (at < 0) return s;
  const breadcrumb = s.breadcrumb.slice(0, at + 1);
  return {
    ...s,
    current: id,
    breadcrumb,
    edgeModes: {},
    sorts: {},
    epoch: s.epoch + 1,
  };
}

/** Replace the whole session with a fresh root query result. */
export function enterRoot(s: ViewState, root: HAGraphJson): ViewState {
  return { ...initialState(root.id), hoverEnabled: s.hoverEnabled, epoch: s.epoch + 1 };
}

export function toggleEdgeMode(s: ViewState, key: string): ViewState {
  const mode: EdgeMode = (s.edgeModes[key] ?? "graph") === "graph" ? "data" : "graph";
  return { ...s, edgeModes: { ...s.edgeModes, [key]: mode } };
}

export function setHover(s: ViewState, enabled: boolean): ViewState {
  return { ...s, hoverEnabled: enabled };
}

/** Click a column header: sort by it, or flip direction when repeated. */
export function sortBy(s: ViewState, key: string, column: number): ViewState {
  const prev = s.sorts[key];
  const descending = prev?.column === column ? !prev.descending : false;
  return { ...s, sorts: { ...s.sorts, [key]: { column, descending } } };
}

/** True when a response tagged with `epoch` still matches the state — a
 * zoom answered after further navigation must be discarded. */
export function isFresh(s: ViewState, epoch: number): boolean {
  return s.epoch === epoch;
}
