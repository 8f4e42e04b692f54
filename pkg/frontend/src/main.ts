/** Browser entry point: wires the pure renderer and state transitions to
 * the DOM and the HTTP API.  At most one navigation request is in flight;
 * answers from a superseded navigation are discarded via the state epoch. */

import { ApiError, Client } from "./api.js";
import { renderScene, errorPanel, h, type VNode, type VisualEdge } from "./render.js";
import {
  enterChild,
  enterRoot,
  goToCrumb,
  initialState,
  isFresh,
  setHover,
  sortBy,
  toggleEdgeMode,
  type ViewState,
} from "./state.js";
import { TEMPLATES, instantiate } from "./templates.js";
import type { HAGraphJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SVG_TAGS = new Set(["svg", "g", "line", "circle", "text"]);

export function mount(node: VNode | string, parent: Element): void {
  if (typeof node === "string") {
    parent.appendChild(document.createTextNode(node));
    return;
  }
  const el = SVG_TAGS.has(node.tag)
    ? document.createElementNS(SVG_NS, node.tag)
    : document.createElement(node.tag);
  for (const [k, v] of Object.entries(node.attrs)) el.setAttribute(k, v);
  for (const [name, fn] of Object.entries(node.on ?? {})) {
    el.addEventListener(name, (ev) => fn(ev));
  }
  for (const child of node.children) mount(child, el);
  parent.appendChild(el);
}

class App {
  private state: ViewState | null = null;
  private graphs = new Map<string, HAGraphJson>();
  private busy = false;
  private dataset = "";

  constructor(
    private readonly client: Client,
    private readonly root: Element,
    private readonly status: Element,
  ) {}

  async start(): Promise<void> {
    const datasets = await this.client.datasets();
    const picker = document.getElementById("dataset") as HTMLSelectElement;
    for (const ds of datasets) {
      const opt = document.createElement("option");
      opt.value = ds.name;
      opt.textContent = `${ds.name} (${ds.vertices} vertices, ${ds.edges} edges)`;
      picker.appendChild(opt);
    }
    this.dataset = datasets[0]?.name ?? "";
    picker.addEventListener("change", () => (this.dataset = picker.value));

    const templatePicker = document.getElementById("template") as HTMLSelectElement;
    const queryBox = document.getElementById("query") as HTMLTextAreaElement;
    TEMPLATES.forEach((t, i) => {
      const opt = document.createElement("option");
      opt.value = String(i);
      opt.textContent = t.name;
      opt.title = t.description;
      templatePicker.appendChild(opt);
    });
    const fillTemplate = () => {
      const t = TEMPLATES[Number(templatePicker.value)];
      if (t) queryBox.value = instantiate(t, this.dataset || "{dataset}");
    };
    templatePicker.addEventListener("change", fillTemplate);
    fillTemplate();

    document.getElementById("run")!.addEventListener("click", () => {
      void this.runQuery(queryBox.value);
    });
    const hoverBox = document.getElementById("hover") as HTMLInputElement;
    hoverBox.addEventListener("change", () => {
      if (this.state) {
        this.state = setHover(this.state, hoverBox.checked);
        this.redraw();
      }
    });
    this.note("ready — pick a template or type a query, then Run");
  }

  private note(message: string, isError = false): void {
    this.status.textContent = message;
    this.status.className = isError ? "status error" : "status";
  }

  /** Run `fn` as the sole in-flight navigation; drop stale answers. */
  private async navigate(fn: () => Promise<HAGraphJson>, apply: (h: HAGraphJson) => void) {
    if (this.busy) {
      this.note("a navigation is already in flight — hold on");
      return;
    }
    const epoch = this.state?.epoch ?? -1;
    this.busy = true;
    try {
      const result = await fn();
      if (this.state && !isFresh(this.state, epoch)) return; // superseded
      apply(result);
      this.redraw();
      this.note(`showing ${result.id} (${result.hubs.length} hubs, ${result.edges.length} summary edges)`);
    } catch (err) {
      // leave the current scene untouched; only the status line changes
      if (err instanceof ApiError) {
        this.note(`server rejected the request: ${err.body.code}${err.body.message ? ` — ${err.body.message}` : ""}`, true);
      } else {
        this.note(`request failed: ${String(err)}`, true);
      }
    } finally {
      this.busy = false;
    }
  }

  private runQuery(text: string): Promise<void> {
    return this.navigate(
      () => this.client.query(text, this.dataset || undefined),
      (result) => {
        this.graphs.set(result.id, result);
        this.state = this.state ? enterRoot(this.state, result) : initialState(result.id);
        this.state = { ...this.state, current: result.id, breadcrumb: [result.id] };
      },
    );
  }

  private zoomEdge(edge: VisualEdge): Promise<void> {
    const s = this.state!;
    const directed = edge.forward ?? edge.reverse!;
    return this.navigate(
      () =>
        this.client.zoom({
          ha_id: s.current,
          mode: "edge",
          edge: [directed.src, directed.dst],
        }),
      (child) => {
        this.graphs.set(child.id, child);
        this.state = enterChild(s, child);
      },
    );
  }

  private redraw(): void {
    this.root.replaceChildren();
    const s = this.state;
    if (!s) return;
    const ha = this.graphs.get(s.current);
    const scene: VNode = ha
      ? renderScene(ha, s, {
          onEdgeClick: (e) => void this.zoomEdge(e),
          onEdgeToggle: (e) => {
            this.state = toggleEdgeMode(s, e.key);
            this.redraw();
          },
          onCrumbClick: (id) => {
            this.state = goToCrumb(s, id);
            this.redraw();
          },
          onSort: (key, column) => {
            this.state = sortBy(s, key, column);
            this.redraw();
          },
        })
      : errorPanel(`no cached summary graph for ${s.current}`);
    mount(
      h("div", { class: "app-scene" }, [
        scene,
        h("p", { class: "hint" }, [
          "click an edge to zoom in · double-click toggles the data table · crumbs jump back",
        ]),
      ]),
      this.root,
    );
  }
}

export function boot(): void {
  const base = (document.getElementById("api-base") as HTMLInputElement)?.value ?? "";
  const app = new App(
    new Client(base || window.location.origin),
    document.getElementById("scene")!,
    document.getElementById("status")!,
  );
  void app.start().catch((err) => {
    document.getElementById("status")!.textContent =
      `cannot reach the service: ${String(err)}`;
  });
}

if (typeof document !== "undefined" && document.getElementById("scene")) {
  boot();
}
