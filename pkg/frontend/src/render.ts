// Canvas painting for the neighborhood view, plus the pure view models the
// tests inspect. Node shape encodes kind; edge width grows with strength.
// Edges on a highlighted path are emphasized; every label shown is taken
// verbatim from a service response.

import type { LaidOutNode } from './layout.js';
import type { MapEdge, NeighborhoodAnswer, PathAnswer } from './types.js';

export interface PathView {
  nodes: string[];
  lengthLabel: string;
}

export interface PathAnswerView {
  unreachable: boolean;
  bestLengthLabel: string;
  tied: boolean;
  tieCount: number;
  paths: PathView[];
}

export function pathAnswerView(answer: PathAnswer): PathAnswerView {
  if (answer.best_length === null) {
    return { unreachable: true, bestLengthLabel: 'unreachable', tied: false, tieCount: 0, paths: [] };
  }
  const label = answer.best_length.toFixed(6);
  return {
    unreachable: false,
    bestLengthLabel: label,
    tied: answer.paths.length > 1,
    tieCount: answer.paths.length,
    paths: answer.paths.map((nodes) => ({ nodes: [...nodes], lengthLabel: label })),
  };
}

export function highlightedEdges(answer: PathAnswer | null): Set<string> {
  const keys = new Set<string>();
  if (!answer) return keys;
  for (const path of answer.paths) {
    for (let i = 0; i + 1 < path.length; i++) {
      keys.add(edgeKey(path[i], path[i + 1]));
    }
  }
  return keys;
}

export function edgeKey(a: string, b: string): string {
  return a < b ? `${a}|${b}` : `${b}|${a}`;
}

export function edgeWidth(strength: number): number {
  return 1 + 2.2 * Math.log1p(strength);
}

const NODE_RADIUS = 14;

export function drawNeighborhood(
  ctx: CanvasRenderingContext2D,
  answer: NeighborhoodAnswer,
  placed: LaidOutNode[],
  highlighted: Set<string>,
): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  const at = new Map(placed.map((n) => [n.id, n]));

  for (const edge of answer.edges) {
    const a = at.get(edge.a);
    const b = at.get(edge.b);
    if (!a || !b) continue;
    const hot = highlighted.has(edgeKey(edge.a, edge.b));
    ctx.beginPath();
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.lineWidth = edgeWidth(edge.strength) + (hot ? 1.5 : 0);
    ctx.strokeStyle = hot ? '#d97706' : '#94a3b8';
    ctx.stroke();
  }

  for (const node of placed) {
    ctx.beginPath();
    ctx.fillStyle = node.id === answer.origin ? '#2563eb' : '#e2e8f0';
    ctx.strokeStyle = '#334155';
    ctx.lineWidth = 1.5;
    if (node.kind === 'agent') {
      ctx.arc(node.x, node.y, NODE_RADIUS, 0, 2 * Math.PI);
    } else if (node.kind === 'document') {
      ctx.rect(node.x - NODE_RADIUS, node.y - NODE_RADIUS, 2 * NODE_RADIUS, 2 * NODE_RADIUS);
    } else {
      ctx.moveTo(node.x, node.y - NODE_RADIUS);
      ctx.lineTo(node.x + NODE_RADIUS, node.y + NODE_RADIUS);
      ctx.lineTo(node.x - NODE_RADIUS, node.y + NODE_RADIUS);
      ctx.closePath();
    }
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = node.id === answer.origin ? '#ffffff' : '#0f172a';
    ctx.font = '11px sans-serif';
    ctx.textAlign = 'center';
    ctx.textBaseline = 'middle';
    ctx.fillText(node.label, node.x, node.y);
  }
}

export function edgeAt(
  answer: NeighborhoodAnswer,
  placed: LaidOutNode[],
  x: number,
  y: number,
): MapEdge | null {
  const at = new Map(placed.map((n) => [n.id, n]));
  for (const edge of answer.edges) {
    const a = at.get(edge.a);
    const b = at.get(edge.b);
    if (!a || !b) continue;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len2 = dx * dx + dy * dy || 1e-6;
    const t = Math.max(0, Math.min(1, ((x - a.x) * dx + (y - a.y) * dy) / len2));
    const px = a.x + t * dx;
    const py = a.y + t * dy;
    if (Math.hypot(x - px, y - py) < 6) {
      return edge;
    }
  }
  return null;
}
