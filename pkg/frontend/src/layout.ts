// Small deterministic force layout for the neighborhood view.
//
// Springs pull edge endpoints toward a rest length proportional to the
// edge's distance (closer resources sit closer on screen); a mild global
// repulsion keeps unrelated nodes apart. Layout is presentation only —
// exact distances are shown numerically on hover.

import type { MapEdge, MapNode } from './types.js';

export interface LaidOutNode extends MapNode {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  restScale: number; // screen pixels per unit of map distance
  iterations: number;
}

export const DEFAULT_LAYOUT: LayoutOptions = {
  width: 640,
  height: 480,
  restScale: 110,
  iterations: 220,
};

export function restLength(distance: number, options: LayoutOptions = DEFAULT_LAYOUT): number {
  return distance * options.restScale;
}

export function layoutNeighborhood(
  nodes: MapNode[],
  edges: MapEdge[],
  options: LayoutOptions = DEFAULT_LAYOUT,
): LaidOutNode[] {
  const ordered = [...nodes].sort((a, b) => (a.id < b.id ? -1 : 1));
  const cx = options.width / 2;
  const cy = options.height / 2;
  const ring = Math.min(options.width, options.height) * 0.35;
  const placed: LaidOutNode[] = ordered.map((node, i) => {
    const angle = (2 * Math.PI * i) / Math.max(1, ordered.length);
    return { ...node, x: cx + ring * Math.cos(angle), y: cy + ring * Math.sin(angle) };
  });
  const index = new Map(placed.map((n) => [n.id, n]));

  for (let step = 0; step < options.iterations; step++) {
    const cool = 1 - step / options.iterations;
    // spring toward rest length on every edge
    for (const edge of edges) {
      const a = index.get(edge.a);
      const b = index.get(edge.b);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const len = Math.hypot(dx, dy) || 1e-6;
      const rest = restLength(edge.distance, options);
      const force = ((len - rest) / len) * 0.06 * cool;
      a.x += dx * force;
      a.y += dy * force;
      b.x -= dx * force;
      b.y -= dy * force;
    }
    // pairwise repulsion
    for (let i = 0; i < placed.length; i++) {
      for (let j = i + 1; j < placed.length; j++) {
        const a = placed[i];
        const b = placed[j];
        const dx = b.x - a.x;
        const dy = b.y - a.y;
        const d2 = dx * dx + dy * dy || 1e-6;
        const push = Math.min(12, 2600 / d2) * cool;
        const len = Math.sqrt(d2);
        a.x -= (dx / len) * push;
        a.y -= (dy / len) * push;
        b.x += (dx / len) * push;
        b.y += (dy / len) * push;
      }
    }
    for (const node of placed) {
      node.x = Math.min(options.width - 20, Math.max(20, node.x));
      node.y = Math.min(options.height - 20, Math.max(20, node.y));
    }
  }
  return placed;
}
