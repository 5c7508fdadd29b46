import type { PkgDoc } from "./types.js";

/** Visual encoding of the five edge classes. Pairs absent from the document
 * are simply not rendered; everything else maps 1:1 onto a stroke style so a
 * rendering can be checked against the service document field by field. */

export type EdgeClassName = "known" | "adjacent" | "semidirected" | "unknown";

export interface RenderedEdge {
  /** canonical unordered pair, a < b */
  a: number;
  b: number;
  cls: EdgeClassName;
  /** arrowhead target, for known/semidirected */
  from: number | null;
  to: number | null;
  stroke: "solid" | "dashed" | "dotted";
  arrow: boolean;
}

export const EDGE_STYLE: Record<EdgeClassName, { stroke: RenderedEdge["stroke"]; arrow: boolean }> = {
  known: { stroke: "solid", arrow: true },
  adjacent: { stroke: "solid", arrow: false },
  semidirected: { stroke: "dashed", arrow: true },
  unknown: { stroke: "dotted", arrow: false },
};

export function renderEdges(pkg: PkgDoc): RenderedEdge[] {
  const out: RenderedEdge[] = [];
  const push = (cls: EdgeClassName, i: number, j: number, directed: boolean) => {
    const [a, b] = i < j ? [i, j] : [j, i];
    out.push({
      a,
      b,
      cls,
      from: directed ? i : null,
      to: directed ? j : null,
      ...EDGE_STYLE[cls],
    });
  };
  for (const [i, j] of pkg.known) push("known", i, j, true);
  for (const [i, j] of pkg.adjacent) push("adjacent", i, j, false);
  for (const [i, j] of pkg.semidirected) push("semidirected", i, j, true);
  for (const [i, j] of pkg.unknown) push("unknown", i, j, false);
  out.sort((x, y) => x.a - y.a || x.b - y.b);
  return out;
}

/** Which vertices can still be intervened on, straight from the document. */
export function viableVertices(pkg: PkgDoc): Set<number> {
  const viable = new Set<number>();
  for (const [i, j] of [...pkg.adjacent, ...pkg.semidirected, ...pkg.unknown]) {
    viable.add(i);
    viable.add(j);
  }
  return viable;
}

/** Format the service's round diff for the diff panel; purely presentational. */
export interface DiffLine {
  pair: [number, number];
  from: string;
  to: string;
  via: "test" | "propagation";
}

export function formatRoundDiff(
  transitions: [[number, number], string, string][],
  meekOriented: [number, number][],
): DiffLine[] {
  const lines: DiffLine[] = transitions.map(([pair, from, to]) => ({
    pair: [pair[0], pair[1]] as [number, number],
    from,
    to,
    via: "test" as const,
  }));
  for (const [i, j] of meekOriented) {
    lines.push({ pair: [i, j], from: "adjacent", to: "known", via: "propagation" });
  }
  return lines;
}
