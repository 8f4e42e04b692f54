/** Pure scene construction: (HAGraph JSON, ViewState) -> virtual tree.
 *
 * The virtual nodes are plain objects so the whole renderer runs (and is
 * tested) without a browser; `mount` in main.ts turns them into real DOM.
 * Directed pairs (x,y)/(y,x) collapse into a single visual edge carrying
 * both directions' summaries. */

import { layout } from "./layout.js";
import { edgeKey, type SortState, type ViewState } from "./state.js";
import type {
  EdgeJson,
  GroupRow,
  HAGraphJson,
  SummaryValue,
} from "./types.js";

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  children: (VNode | string)[];
  on?: Record<string, (event?: unknown) => void>;
}

export function h(
  tag: string,
  attrs: Record<string, string> = {},
  children: (VNode | string)[] = [],
  on?: Record<string, (event?: unknown) => void>,
): VNode {
  return on ? { tag, attrs, children, on } : { tag, attrs, children };
}

export interface VisualEdge {
  key: string;
  a: number;
  b: number;
  forward: EdgeJson | null; // a -> b
  reverse: EdgeJson | null; // b -> a
  width: number;
  label: string;
}

function pathLabel(value: SummaryValue): string | null {
  if (Array.isArray(value) && value.every((x) => typeof x === "string")) {
    return value.length ? (value as string[]).join(" > ") : null;
  }
  return null;
}

/** Graph-mode edge label: a single value stays a label, a path becomes a
 * chain, and the subgraph size rides along when present. */
export function edgeLabel(edge: EdgeJson): string {
  const parts: string[] = [];
  const path = pathLabel(edge.summaries["relationshipType"] ?? null);
  if (path) parts.push(path);
  const count = edge.summaries["vertexCount"];
  if (typeof count === "number") parts.push(String(count));
  if (parts.length === 0) {
    const names = Object.keys(edge.summaries);
    if (names.length) parts.push(names[0]);
  }
  return parts.join(" | ");
}

export function mergeVisualEdges(edges: EdgeJson[]): VisualEdge[] {
  const byKey = new Map<string, VisualEdge>();
  for (const e of edges) {
    const key = edgeKey(e.src, e.dst);
    let v = byKey.get(key);
    if (!v) {
      const [a, b] = e.src <= e.dst ? [e.src, e.dst] : [e.dst, e.src];
      v = { key, a, b, forward: null, reverse: null, width: 0, label: "" };
      byKey.set(key, v);
    }
    if (e.src === v.a) v.forward = e;
    else v.reverse = e;
  }
  for (const v of byKey.values()) {
    const primary = v.forward ?? v.reverse!;
    v.width = Math.max(v.forward?.width_band ?? 0, v.reverse?.width_band ?? 0);
    v.label = edgeLabel(primary);
  }
  return [...byKey.values()].sort((p, q) => (p.key < q.key ? -1 : 1));
}

/** Rows of a grouped summary as a sortable 2-D table model. */
export function tableRows(
  value: SummaryValue,
  sort?: SortState,
): { key: string; value: string }[] {
  if (!Array.isArray(value)) {
    return value == null ? [] : [{ key: "", value: String(value) }];
  }
  if (value.every((x) => typeof x === "string")) {
    // a path: ordered list, one row per step
    return (value as string[]).map((label, i) => ({
      key: String(i + 1),
      value: label,
    }));
  }
  const rows = (value as GroupRow[]).map((r) => ({
    key: Array.isArray(r.group_key) ? r.group_key.join(", ") : String(r.group_key),
    value: String(r.value),
  }));
  if (sort) {
    const col: "key" | "value" = sort.column === 0 ? "key" : "value";
    rows.sort((p, q) => {
      const pn = Number(p[col]);
      const qn = Number(q[col]);
      const cmp =
        Number.isFinite(pn) && Number.isFinite(qn)
          ? pn - qn
          : p[col] < q[col]
            ? -1
            : p[col] > q[col]
              ? 1
              : 0;
      return sort.descending ? -cmp : cmp;
    });
  }
  return rows;
}

export interface SceneHandlers {
  onEdgeClick: (edge: VisualEdge) => void;
  onEdgeToggle: (edge: VisualEdge) => void;
  onCrumbClick: (id: string) => void;
  onSort: (edgeKey: string, column: number) => void;
}

function validate(ha: HAGraphJson): string | null {
  if (typeof ha !== "object" || ha === null) return "payload is not an object";
  if (typeof ha.id !== "string") return "missing id";
  if (!Array.isArray(ha.hubs)) return "missing hubs array";
  if (!Array.isArray(ha.edges)) return "missing edges array";
  for (const hub of ha.hubs) {
    if (typeof hub?.vid !== "number" || typeof hub?.name !== "string") {
      return "malformed hub entry";
    }
  }
  for (const e of ha.edges) {
    if (typeof e?.src !== "number" || typeof e?.dst !== "number") {
      return "malformed edge entry";
    }
    if (typeof e?.summaries !== "object") return "edge without summaries";
  }
  return null;
}

export function errorPanel(message: string): VNode {
  return h("div", { class: "error-panel", role: "alert" }, [message]);
}

function dataTable(
  edge: VisualEdge,
  state: ViewState,
  handlers: SceneHandlers,
): VNode {
  const summaries = {
    ...(edge.forward?.summaries ?? {}),
    ...Object.fromEntries(
      Object.entries(edge.reverse?.summaries ?? {}).map(([k, v]) => [
        edge.forward ? `${k} (reverse)` : k,
        v,
      ]),
    ),
  };
  const sections: VNode[] = [];
  for (const [name, value] of Object.entries(summaries)) {
    const rows = tableRows(value, state.sorts[edge.key]);
    sections.push(
      h("table", { class: "edge-table", "data-summary": name }, [
        h("caption", {}, [name]),
        h("thead", {}, [
          h("tr", {}, [
            h("th", { "data-col": "0" }, ["group"], {
              click: () => handlers.onSort(edge.key, 0),
            }),
            h("th", { "data-col": "1" }, ["value"], {
              click: () => handlers.onSort(edge.key, 1),
            }),
          ]),
        ]),
        h(
          "tbody",
          {},
          rows.map((r) => h("tr", {}, [h("td", {}, [r.key]), h("td", {}, [r.value])])),
        ),
      ]),
    );
  }
  return h("div", { class: "edge-data", "data-edge": edge.key }, sections);
}

/** Build the full scene for one HA-graph. */
export function renderScene(
  ha: HAGraphJson,
  state: ViewState,
  handlers: SceneHandlers,
  width = 800,
  height = 600,
): VNode {
  const problem = validate(ha);
  if (problem) return errorPanel(`bad summary-graph payload: ${problem}`);

  const visual = mergeVisualEdges(ha.edges);
  const pos = layout(
    {
      id: ha.id,
      nodeIds: ha.hubs.map((hub) => hub.vid),
      links: visual.map((v) => [v.a, v.b] as [number, number]),
    },
    width,
    height,
  );

  const crumb = h(
    "nav",
    { class: "breadcrumb" },
    state.breadcrumb.map((id, i) =>
      h(
        "button",
        {
          class: id === state.current ? "crumb current" : "crumb",
          "data-ha": id,
        },
        [i === 0 ? `root (${id})` : id],
        { click: () => handlers.onCrumbClick(id) },
      ),
    ),
  );

  const edgeNodes: VNode[] = [];
  for (const v of visual) {
    const pa = pos.get(v.a)!;
    const pb = pos.get(v.b)!;
    const labelClass = state.hoverEnabled ? "edge-label hover-only" : "edge-label";
    edgeNodes.push(
      h("g", { class: "edge", "data-edge": v.key }, [
        h(
          "line",
          {
            x1: pa.x.toFixed(1),
            y1: pa.y.toFixed(1),
            x2: pb.x.toFixed(1),
            y2: pb.y.toFixed(1),
            "stroke-width": v.width.toFixed(2),
            class: "edge-line",
          },
          [],
          {
            click: () => handlers.onEdgeClick(v),
            dblclick: () => handlers.onEdgeToggle(v),
          },
        ),
        h(
          "text",
          {
            x: ((pa.x + pb.x) / 2).toFixed(1),
            y: ((pa.y + pb.y) / 2).toFixed(1),
            class: labelClass,
          },
          [v.label],
        ),
      ]),
    );
  }

  const hubNodes = ha.hubs.map((hub) => {
    const p = pos.get(hub.vid)!;
    return h("g", { class: `hub ${hub.provenance}`, "data-vid": String(hub.vid) }, [
      h("circle", { cx: p.x.toFixed(1), cy: p.y.toFixed(1), r: "14" }),
      h(
        "text",
        { x: p.x.toFixed(1), y: (p.y - 20).toFixed(1), class: "hub-label" },
        [hub.name],
      ),
    ]);
  });

  const dataPanels = visual
    .filter((v) => (state.edgeModes[v.key] ?? "graph") === "data")
    .map((v) => dataTable(v, state, handlers));

  return h("div", { class: "scene", "data-ha": ha.id }, [
    crumb,
    h(
      "svg",
      {
        viewBox: `0 0 ${width} ${height}`,
        width: String(width),
        height: String(height),
      },
      [...edgeNodes, ...hubNodes],
    ),
    h("div", { class: "data-panels" }, dataPanels),
  ]);
}
