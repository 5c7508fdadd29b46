import { ApiClient } from "./api.js";
import { SessionController } from "./controller.js";
import { SessionLayout, type Point, type PositionStore } from "./layout.js";
import type { RenderedEdge } from "./render.js";
import type { OutcomeResult } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 720;
const HEIGHT = 480;

const localStore: PositionStore = {
  get: (key) => window.localStorage.getItem(key),
  set: (key, value) => window.localStorage.setItem(key, value),
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

class App {
  private readonly api = new ApiClient("");
  private controller: SessionController | null = null;
  private layout: SessionLayout | null = null;
  private dragging: number | null = null;

  constructor(private readonly root: HTMLElement) {}

  start(): void {
    this.renderLanding();
  }

  private renderLanding(): void {
    this.root.replaceChildren();
    const panel = el("div", { class: "panel landing" });
    panel.append(el("h1", {}, "causal discovery advisor"));
    panel.append(el("p", {}, "Open an existing session, or start a demo on a small chain."));

    const row = el("div", { class: "row" });
    const input = el("input", { placeholder: "session id" });
    const openButton = el("button", {}, "open session");
    openButton.onclick = () => input.value.trim() && this.openSession(input.value.trim());
    const demoButton = el("button", {}, "start chain demo");
    demoButton.onclick = async () => {
      const session = await this.api.createDemoSession(
        { n: 3, edges: [[0, 1], [1, 2]] },
        { k_max: 1, seed: 5 },
      );
      this.openSession(session.id);
    };
    row.append(input, openButton, demoButton);
    panel.append(row);
    this.root.append(panel);
  }

  private async openSession(id: string): Promise<void> {
    this.controller = new SessionController(this.api, id);
    this.layout = new SessionLayout(id, localStore);
    await this.controller.load();
    this.renderSession();
  }

  private async refresh(): Promise<void> {
    if (!this.controller) return;
    await this.controller.load();
    this.renderSession();
  }

  private renderSession(): void {
    const controller = this.controller;
    if (!controller) return;
    const state = controller.state;
    this.root.replaceChildren();

    if (state.banner) {
      const banner = el("div", { class: `banner ${state.banner.kind}` }, state.banner.text);
      if (state.banner.kind === "error") {
        const retry = el("button", {}, "retry");
        retry.onclick = () => this.refresh();
        banner.append(" ", retry);
      }
      this.root.append(banner);
    }
    const session = state.session;
    if (!session) return;

    const header = el("div", { class: "panel" });
    header.append(el("h1", {}, `session ${session.id}`));
    header.append(el("p", {},
      `mode ${session.mode} · round ${session.round} · ambiguity ${session.ambiguity}`));
    this.root.append(header);

    const main = el("div", { class: "columns" });
    main.append(this.graphPanel());
    const side = el("div", { class: "side" });
    if (session.done) {
      side.append(el("div", { class: "panel done" }, "discovery complete"));
    } else {
      side.append(this.proposalPanel());
    }
    side.append(this.whatifPanel());
    if (state.lastDiff.length) side.append(this.diffPanel());
    main.append(side);
    this.root.append(main);
  }

  private positions(): Point[] {
    const state = this.controller!.state;
    const pkg = state.session!.pkg;
    const edges = state.edges.map((e) => [e.a, e.b] as [number, number]);
    return this.layout!.positions(pkg.n, edges, { width: WIDTH, height: HEIGHT });
  }

  private graphPanel(): HTMLElement {
    const state = this.controller!.state;
    const panel = el("div", { class: "panel graph" });
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    svg.setAttribute("class", "graph-canvas");

    const defs = document.createElementNS(SVG_NS, "defs");
    defs.innerHTML =
      '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ' +
      'markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
      '<path d="M 0 0 L 10 5 L 0 10 z" fill="#2d3a4a"/></marker>';
    svg.append(defs);

    const points = this.positions();
    for (const edge of state.edges) {
      svg.append(this.edgeElement(edge, points));
    }
    const pkg = state.session!.pkg;
    for (let v = 0; v < pkg.n; v++) {
      const p = points[v]!;
      const group = document.createElementNS(SVG_NS, "g");
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(p.x));
      circle.setAttribute("cy", String(p.y));
      circle.setAttribute("r", "16");
      const classes = ["vertex"];
      if (state.highlighted.has(v)) classes.push("proposed");
      if (state.whatifSelection.has(v)) classes.push("whatif");
      if (!state.viable.has(v)) classes.push("settled");
      circle.setAttribute("class", classes.join(" "));
      circle.addEventListener("mousedown", () => (this.dragging = v));
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(p.x));
      label.setAttribute("y", String(p.y + 4));
      label.setAttribute("class", "vertex-label");
      label.textContent = String(v);
      group.append(circle, label);
      svg.append(group);
    }

    svg.addEventListener("mousemove", (event) => {
      if (this.dragging === null || !this.layout) return;
      const rect = svg.getBoundingClientRect();
      const x = ((event.clientX - rect.left) / rect.width) * WIDTH;
      const y = ((event.clientY - rect.top) / rect.height) * HEIGHT;
      this.layout.drag(this.dragging, { x, y });
      this.renderSession();
    });
    svg.addEventListener("mouseup", () => (this.dragging = null));

    panel.append(svg);
    const legend = el("div", { class: "legend" });
    legend.innerHTML =
      '<span class="swatch solid-arrow"></span>known ' +
      '<span class="swatch solid"></span>adjacent ' +
      '<span class="swatch dashed-arrow"></span>semi-directed ' +
      '<span class="swatch dotted"></span>unknown';
    panel.append(legend);
    return panel;
  }

  private edgeElement(edge: RenderedEdge, points: Point[]): SVGElement {
    const line = document.createElementNS(SVG_NS, "line");
    const from = edge.from ?? edge.a;
    const to = edge.to ?? edge.b;
    const pa = points[from]!;
    const pb = points[to]!;
    // trim the line so arrowheads sit on the circle border
    const dx = pb.x - pa.x;
    const dy = pb.y - pa.y;
    const dist = Math.max(1e-6, Math.hypot(dx, dy));
    const trim = 18 / dist;
    line.setAttribute("x1", String(pa.x + dx * trim));
    line.setAttribute("y1", String(pa.y + dy * trim));
    line.setAttribute("x2", String(pb.x - dx * trim));
    line.setAttribute("y2", String(pb.y - dy * trim));
    line.setAttribute("class", `edge ${edge.cls}`);
    if (edge.stroke === "dashed") line.setAttribute("stroke-dasharray", "8 5");
    if (edge.stroke === "dotted") line.setAttribute("stroke-dasharray", "2 5");
    if (edge.arrow) line.setAttribute("marker-end", "url(#arrow)");
    return line;
  }

  private proposalPanel(): HTMLElement {
    const controller = this.controller!;
    const state = controller.state;
    const panel = el("div", { class: "panel" });
    panel.append(el("h2", {}, "proposed intervention"));
    const proposal = state.proposal;
    if (!proposal) {
      panel.append(el("p", {}, "no proposal available"));
      return panel;
    }
    panel.append(el("p", { class: "proposal" },
      `intervene on {${proposal.intervention.join(", ")}} · expected tests ${proposal.gain}`));

    const form = el("div", { class: "tests" });
    for (const test of proposal.tests) {
      const row = el("div", { class: "test-row" });
      const label = test.type === "orientation"
        ? `does ${test.source} → ${test.target} exist?`
        : `are ${test.pair![0]} and ${test.pair![1]} adjacent?`;
      row.append(el("span", { class: "test-label" }, `${test.id}  ${label}`));
      if (test.answered || state.answeredTests.has(test.id)) {
        row.append(el("span", { class: "answered" }, "recorded"));
      } else {
        for (const result of ["present", "absent"] as OutcomeResult[]) {
          const button = el("button", {
            class: state.formEntries.get(test.id) === result ? "choice selected" : "choice",
          }, result);
          button.onclick = () => {
            controller.setEntry(test.id, state.formEntries.get(test.id) === result ? null : result);
            this.renderSession();
          };
          row.append(button);
        }
      }
      form.append(row);
    }
    panel.append(form);

    const submit = el("button", { class: "primary" },
      state.formEntries.size ? `submit ${state.formEntries.size} outcome(s)` : "submit");
    submit.onclick = async () => {
      await controller.submit();
      this.renderSession();
    };
    panel.append(submit);
    return panel;
  }

  private whatifPanel(): HTMLElement {
    const controller = this.controller!;
    const state = controller.state;
    const panel = el("div", { class: "panel" });
    panel.append(el("h2", {}, "what-if"));
    panel.append(el("p", { class: "hint" },
      "pick viable vertices, then evaluate the gain of intervening on them"));
    const row = el("div", { class: "row wrap" });
    const n = state.session?.pkg.n ?? 0;
    for (let v = 0; v < n; v++) {
      const viable = state.viable.has(v);
      const button = el("button", {
        class: state.whatifSelection.has(v) ? "choice selected" : "choice",
        ...(viable ? {} : { disabled: "disabled", title: "not viable: no unresolved edge" }),
      }, String(v));
      button.onclick = () => {
        controller.toggleWhatif(v);
        this.renderSession();
      };
      row.append(button);
    }
    panel.append(row);
    const evaluate = el("button", {}, "evaluate");
    evaluate.onclick = async () => {
      await controller.evaluateWhatif();
      this.renderSession();
    };
    panel.append(evaluate);
    if (state.whatif) {
      const gainLine = el("p", { class: "proposal" },
        `gain ${state.whatif.gain} vs proposal ${state.proposal?.gain ?? "-"}`);
      panel.append(gainLine);
      const list = el("ul", { class: "breakdown" });
      for (const rowDoc of state.whatif.edges) {
        list.append(el("li", {},
          `${rowDoc.pair[0]}–${rowDoc.pair[1]} (${rowDoc.class}): ` +
          (rowDoc.counted ? `tested via ${rowDoc.test}` : "not tested")));
      }
      panel.append(list);
    }
    return panel;
  }

  private diffPanel(): HTMLElement {
    const state = this.controller!.state;
    const panel = el("div", { class: "panel" });
    panel.append(el("h2", {}, "last round"));
    const list = el("ul", { class: "diff" });
    for (const line of state.lastDiff) {
      list.append(el("li", { class: line.via },
        `${line.pair[0]}–${line.pair[1]}: ${line.from} → ${line.to}` +
        (line.via === "propagation" ? " (rule propagation)" : "")));
    }
    panel.append(list);
    return panel;
  }
}

new App(document.getElementById("app")!).start();
