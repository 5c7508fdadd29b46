import { ApiClient, ApiError } from "./api.js";
import { formatRoundDiff, renderEdges, viableVertices } from "./render.js";
import type { DiffLine, RenderedEdge } from "./render.js";
import type {
  OutcomeResult,
  PkgDoc,
  ProposalDoc,
  RoundCloseDoc,
  SessionDoc,
  WhatifDoc,
} from "./types.js";

/** Everything a screen needs to draw one session. The rendered edge classes
 * always mirror the last fetched document; unsaved form entries live apart
 * in `formEntries` and never touch the rendered state. */
export interface ViewState {
  sessionId: string;
  session: SessionDoc | null;
  proposal: ProposalDoc | null;
  edges: RenderedEdge[];
  viable: Set<number>;
  highlighted: Set<number>;
  formEntries: Map<string, OutcomeResult>;
  answeredTests: Set<string>;
  lastDiff: DiffLine[];
  banner: { kind: "error" | "warning"; text: string } | null;
  whatifSelection: Set<number>;
  whatif: WhatifDoc | null;
}

export class SessionController {
  readonly state: ViewState;

  constructor(private readonly api: ApiClient, sessionId: string) {
    this.state = {
      sessionId,
      session: null,
      proposal: null,
      edges: [],
      viable: new Set(),
      highlighted: new Set(),
      formEntries: new Map(),
      answeredTests: new Set(),
      lastDiff: [],
      banner: null,
      whatifSelection: new Set(),
      whatif: null,
    };
  }

  private applyPkg(pkg: PkgDoc): void {
    this.state.edges = renderEdges(pkg);
    this.state.viable = viableVertices(pkg);
  }

  /** Fetch session + proposal and rebuild the rendered state. */
  async load(): Promise<ViewState> {
    this.state.banner = null;
    try {
      const session = await this.api.getSession(this.state.sessionId);
      this.state.session = session;
      this.applyPkg(session.pkg);
      if (session.done) {
        this.state.proposal = null;
        this.state.highlighted = new Set();
      } else {
        const proposal = await this.api.getProposal(this.state.sessionId);
        this.state.proposal = proposal;
        this.state.highlighted = new Set(proposal.intervention);
        this.state.answeredTests = new Set(
          proposal.tests.filter((t) => t.answered).map((t) => t.id),
        );
      }
    } catch (error) {
      this.state.banner = {
        kind: "error",
        text: error instanceof ApiError ? `${error.code}: ${error.message}` : String(error),
      };
    }
    return this.state;
  }

  setEntry(testId: string, result: OutcomeResult | null): void {
    if (result === null) {
      this.state.formEntries.delete(testId);
    } else {
      this.state.formEntries.set(testId, result);
    }
  }

  /** Submit the currently entered outcomes (all pending ones or a subset). */
  async submit(): Promise<RoundCloseDoc | null> {
    const proposal = this.state.proposal;
    if (!proposal) return null;
    const unanswered = new Set(proposal.tests.filter((t) => !t.answered).map((t) => t.id));
    const outcomes = [...this.state.formEntries.entries()]
      .filter(([id]) => unanswered.has(id))
      .map(([id, result]) => ({ id, result }));
    let response: RoundCloseDoc;
    try {
      response = await this.api.submitOutcomes(this.state.sessionId, outcomes);
    } catch (error) {
      this.state.banner = {
        kind: "error",
        text: error instanceof ApiError ? `${error.code}: ${error.message}` : String(error),
      };
      return null;
    }
    if (response.status === "warning") {
      this.state.banner = {
        kind: "warning",
        text: (response.warnings ?? ["submission rejected"]).join("; "),
      };
      return response;
    }
    if (response.status === "closed" && response.pkg) {
      // the service's document is authoritative; the diff panel shows its
      // reported transitions and propagations verbatim
      this.state.lastDiff = formatRoundDiff(
        response.transitions ?? [],
        response.meek_oriented ?? [],
      );
      this.state.formEntries.clear();
      this.state.whatif = null;
      this.state.whatifSelection.clear();
      await this.load();
    }
    return response;
  }

  toggleWhatif(vertex: number): boolean {
    if (!this.state.viable.has(vertex)) return false; // non-viable: disabled
    if (this.state.whatifSelection.has(vertex)) {
      this.state.whatifSelection.delete(vertex);
    } else {
      this.state.whatifSelection.add(vertex);
    }
    return true;
  }

  /** Evaluate the hand-picked set; read-only, session state untouched. */
  async evaluateWhatif(): Promise<WhatifDoc | null> {
    try {
      const doc = await this.api.whatif(this.state.sessionId, [...this.state.whatifSelection].sort((a, b) => a - b));
      this.state.whatif = doc;
      return doc;
    } catch (error) {
      this.state.banner = {
        kind: "error",
        text: error instanceof ApiError ? `${error.code}: ${error.message}` : String(error),
      };
      return null;
    }
  }
}

/** Script the full demo loop through the controller: answer every pending
 * test from the given truth edges until the session completes. Returns the
 * final knowledge document exactly as the service reported it. */
export async function walkDemoSession(
  api: ApiClient,
  sessionId: string,
  truthEdges: [number, number][],
  maxRounds = 60,
): Promise<PkgDoc> {
  const truth = new Set(truthEdges.map(([i, j]) => `${i}->${j}`));
  const skeleton = new Set(truthEdges.map(([i, j]) => (i < j ? `${i}-${j}` : `${j}-${i}`)));
  const controller = new SessionController(api, sessionId);
  for (let round = 0; round < maxRounds; round++) {
    await controller.load();
    if (controller.state.banner) throw new Error(controller.state.banner.text);
    if (controller.state.session?.done) break;
    const proposal = controller.state.proposal;
    if (!proposal) throw new Error("no proposal on an unfinished session");
    for (const test of proposal.tests) {
      if (test.answered) continue;
      let present: boolean;
      if (test.type === "orientation") {
        present = truth.has(`${test.source}->${test.target}`);
      } else {
        const [a, b] = test.pair!;
        present = skeleton.has(`${a}-${b}`);
      }
      controller.setEntry(test.id, present ? "present" : "absent");
    }
    const closed = await controller.submit();
    if (!closed || closed.status !== "closed") {
      throw new Error(`round did not close: ${JSON.stringify(closed)}`);
    }
  }
  const final = await api.getSession(sessionId);
  if (!final.done) throw new Error("session did not complete");
  return final.pkg;
}
