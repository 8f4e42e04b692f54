/** Deterministic force-directed layout.  The RNG is seeded from the
 * HA-graph id, so re-rendering the same graph always yields the same
 * picture (layout randomness is per-graph, not per-render). */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutInput {
  id: string;
  nodeIds: number[];
  /** undirected visual links as [a, b] vid pairs */
  links: [number, number][];
}

function hashString(text: string): number {
  let h = 2166136261 >>> 0;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

/** mulberry32: tiny deterministic PRNG, good enough for jittering seeds. */
export function seededRandom(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layout(
  input: LayoutInput,
  width = 800,
  height = 600,
  iterations = 120,
): Map<number, Point> {
  const rand = seededRandom(hashString(input.id));
  const n = input.nodeIds.length;
  const pos = new Map<number, Point>();
  if (n === 0) return pos;

  // start on a circle with seeded jitter; a lone node sits in the center
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 3;
  input.nodeIds.forEach((vid, i) => {
    const angle = (2 * Math.PI * i) / n + (rand() - 0.5) * 0.5;
    pos.set(vid, {
      x: n === 1 ? cx : cx + radius * Math.cos(angle) + (rand() - 0.5) * 20,
      y: n === 1 ? cy : cy + radius * Math.sin(angle) + (rand() - 0.5) * 20,
    });
  });

  const spring = 0.02;
  const springLength = radius;
  const repulse = 4000;
  for (let iter = 0; iter < iterations; iter++) {
    const force = new Map<number, Point>(
      input.nodeIds.map((vid) => [vid, { x: 0, y: 0 }]),
    );
    // pairwise repulsion
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const a = pos.get(input.nodeIds[i])!;
        const b = pos.get(input.nodeIds[j])!;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const f = repulse / d2;
        const d = Math.sqrt(d2);
        const fa = force.get(input.nodeIds[i])!;
        const fb = force.get(input.nodeIds[j])!;
        fa.x += (dx / d) * f;
        fa.y += (dy / d) * f;
        fb.x -= (dx / d) * f;
        fb.y -= (dy / d) * f;
      }
    }
    // spring attraction along links
    for (const [u, v] of input.links) {
      const a = pos.get(u);
      const b = pos.get(v);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const f = spring * (d - springLength);
      const fa = force.get(u)!;
      const fb = force.get(v)!;
      fa.x += (dx / d) * f;
      fa.y += (dy / d) * f;
      fb.x -= (dx / d) * f;
      fb.y -= (dy / d) * f;
    }
    const cooling = 1 - iter / iterations;
    for (const vid of input.nodeIds) {
      const p = pos.get(vid)!;
      const f = force.get(vid)!;
      p.x += Math.max(-12, Math.min(12, f.x)) * cooling;
      p.y += Math.max(-12, Math.min(12, f.y)) * cooling;
      p.x = Math.max(30, Math.min(width - 30, p.x));
      p.y = Math.max(30, Math.min(height - 30, p.y));
    }
  }
  return pos;
}
