/** Document shapes of the advisor service API. The UI treats these as the
 * single source of truth and never derives edge classes on its own. */

export type PairList = [number, number][];

export interface PkgDoc {
  n: number;
  /** [i, j] meaning the oriented edge i -> j */
  known: PairList;
  /** unordered pairs, i < j */
  adjacent: PairList;
  /** [i, j] meaning the candidate direction i -> j */
  semidirected: PairList;
  /** unordered pairs, i < j */
  unknown: PairList;
}

export interface SessionDoc {
  id: string;
  mode: "interactive" | "demo";
  config: { k_max: number; budget: number | null; k_batch: number; seed: number };
  round: number;
  ambiguity: number;
  done: boolean;
  open_round: boolean;
  pkg: PkgDoc;
}

export interface TestDoc {
  id: string;
  type: "orientation" | "adjacency";
  source?: number;
  target?: number;
  pair?: [number, number];
  answered: boolean;
}

export interface ProposalDoc {
  round: number;
  intervention: number[];
  batches: number[][];
  gain: number;
  tests: TestDoc[];
}

export type OutcomeResult = "present" | "absent";

/** One edge's class change as reported by the service when a round closes. */
export type TransitionRow = [[number, number], string, string];

export interface RoundCloseDoc {
  status: "closed" | "buffered" | "warning";
  applied: boolean;
  pending_tests?: number;
  warnings?: string[];
  round?: number;
  transitions?: TransitionRow[];
  meek_oriented?: [number, number][];
  ambiguity?: number;
  pkg?: PkgDoc;
}

export interface WhatifEdgeRow {
  pair: [number, number];
  class: string;
  counted: boolean;
  test: string | null;
}

export interface WhatifDoc {
  vertices: number[];
  gain: number;
  edges: WhatifEdgeRow[];
}

export interface HistoryDoc {
  id: string;
  rounds: number;
  history: {
    round: number;
    transitions: TransitionRow[];
    meek_oriented: [number, number][];
    ambiguity: number;
    pkg: PkgDoc;
  }[];
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
