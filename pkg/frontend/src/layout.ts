/** Deterministic force-directed layout.
 *
 * Seeded from the session id so a given session always renders the same
 * picture (stable screenshots and tests); manual drags are stored per
 * session and survive re-layouts.
 */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width?: number;
  height?: number;
  iterations?: number;
  springLength?: number;
}

function hashString(text: string): number {
  let h = 2166136261 >>> 0;
  for (let k = 0; k < text.length; k++) {
    h ^= text.charCodeAt(k);
    h = Math.imul(h, 16777619) >>> 0;
  }
  return h >>> 0;
}

/** mulberry32: tiny deterministic PRNG, good enough for jittering layouts. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function computeLayout(
  n: number,
  edges: [number, number][],
  seedKey: string,
  options: LayoutOptions = {},
): Point[] {
  const width = options.width ?? 720;
  const height = options.height ?? 480;
  const iterations = options.iterations ?? 250;
  const spring = options.springLength ?? Math.min(width, height) / Math.max(3, 1.5 * Math.sqrt(n));
  const rng = mulberry32(hashString(seedKey));

  // start on a jittered circle so symmetric graphs still spread out
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 3;
  const points: Point[] = [];
  for (let v = 0; v < n; v++) {
    const angle = (2 * Math.PI * v) / Math.max(1, n) + (rng() - 0.5) * 0.5;
    points.push({
      x: cx + radius * Math.cos(angle) + (rng() - 0.5) * 10,
      y: cy + radius * Math.sin(angle) + (rng() - 0.5) * 10,
    });
  }

  const disp: Point[] = points.map(() => ({ x: 0, y: 0 }));
  for (let step = 0; step < iterations; step++) {
    const temperature = (1 - step / iterations) * spring * 0.5 + 1;
    for (const d of disp) {
      d.x = 0;
      d.y = 0;
    }
    // pairwise repulsion
    for (let a = 0; a < n; a++) {
      for (let b = a + 1; b < n; b++) {
        const pa = points[a]!;
        const pb = points[b]!;
        let dx = pa.x - pb.x;
        let dy = pa.y - pb.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          dx = rng() - 0.5;
          dy = rng() - 0.5;
          dist = Math.hypot(dx, dy);
        }
        const force = (spring * spring) / dist / dist;
        disp[a]!.x += dx * force;
        disp[a]!.y += dy * force;
        disp[b]!.x -= dx * force;
        disp[b]!.y -= dy * force;
      }
    }
    // springs along edges
    for (const [a, b] of edges) {
      const pa = points[a]!;
      const pb = points[b]!;
      const dx = pb.x - pa.x;
      const dy = pb.y - pa.y;
      const dist = Math.max(1e-6, Math.hypot(dx, dy));
      const force = (dist - spring) / dist * 0.3;
      disp[a]!.x += dx * force;
      disp[a]!.y += dy * force;
      disp[b]!.x -= dx * force;
      disp[b]!.y -= dy * force;
    }
    // gentle centering and capped motion
    for (let v = 0; v < n; v++) {
      const p = points[v]!;
      const d = disp[v]!;
      d.x += (cx - p.x) * 0.01;
      d.y += (cy - p.y) * 0.01;
      const mag = Math.hypot(d.x, d.y);
      const cap = Math.min(mag, temperature);
      if (mag > 1e-9) {
        p.x += (d.x / mag) * cap;
        p.y += (d.y / mag) * cap;
      }
      p.x = Math.min(width - 24, Math.max(24, p.x));
      p.y = Math.min(height - 24, Math.max(24, p.y));
    }
  }
  return points.map((p) => ({ x: Math.round(p.x * 100) / 100, y: Math.round(p.y * 100) / 100 }));
}

/** Per-session drag overrides; the browser app backs this with localStorage. */
export interface PositionStore {
  get(key: string): string | null;
  set(key: string, value: string): void;
}

export class MemoryPositionStore implements PositionStore {
  private readonly data = new Map<string, string>();

  get(key: string): string | null {
    return this.data.get(key) ?? null;
  }

  set(key: string, value: string): void {
    this.data.set(key, value);
  }
}

export class SessionLayout {
  private readonly overrides = new Map<number, Point>();

  constructor(
    private readonly sessionId: string,
    private readonly store: PositionStore = new MemoryPositionStore(),
  ) {
    const saved = store.get(`layout:${sessionId}`);
    if (saved) {
      for (const [v, p] of Object.entries(JSON.parse(saved) as Record<string, Point>)) {
        this.overrides.set(Number(v), p);
      }
    }
  }

  positions(n: number, edges: [number, number][], options?: LayoutOptions): Point[] {
    const base = computeLayout(n, edges, this.sessionId, options);
    for (const [v, p] of this.overrides) {
      if (v < base.length) base[v] = p;
    }
    return base;
  }

  drag(vertex: number, to: Point): void {
    this.overrides.set(vertex, { x: to.x, y: to.y });
    const doc: Record<string, Point> = {};
    for (const [v, p] of this.overrides) doc[String(v)] = p;
    this.store.set(`layout:${this.sessionId}`, JSON.stringify(doc));
  }
}
