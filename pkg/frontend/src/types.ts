/** JSON shapes served by the summary-graph HTTP API. */

export interface HubJson {
  vid: number;
  name: string;
  provenance: "selected" | "anchor" | string;
  attrs: { v_grp: number; v_mr: number };
}

export type GroupRow = { group_key: unknown; value: unknown };

/** A summary is either a grouped table, a scalar, or a label path. */
export type SummaryValue = GroupRow[] | number | string | string[] | null;

export interface EdgeJson {
  src: number;
  dst: number;
  summaries: Record<string, SummaryValue>;
  width_band: number;
  strength: number | null;
  subgraph_ref: string;
}

export interface HAGraphJson {
  id: string;
  dataset: string;
  hubs: HubJson[];
  edges: EdgeJson[];
  parent_id: string | null;
  phase_times: Record<string, number>;
}

export interface DatasetJson {
  name: string;
  vertices: number;
  edges: number;
  scc_count: number;
}

export interface EdgeDetailsJson {
  ha_id: string;
  edge: [number, number];
  vertices: { vid: number; name: string; v_grp: number; v_mr: number }[];
  edges: { src: number; dst: number; e_grp: number; e_mr: number; label: string | null }[];
  tables: Record<string, SummaryValue>;
}

export interface ApiErrorBody {
  code: string;
  message?: string;
  [extra: string]: unknown;
}
