import { describe, expect, it } from 'vitest';

import { DEFAULT_LAYOUT, layoutNeighborhood, restLength } from '../src/layout.js';
import { edgeWidth, highlightedEdges, pathAnswerView } from '../src/render.js';
import type { MapEdge, MapNode, PathAnswer } from '../src/types.js';

const nodes: MapNode[] = [
  { id: 'B', kind: 'agent', label: 'B' },
  { id: 'D1', kind: 'document', label: 'D1' },
  { id: 'apple', kind: 'topic', label: 'apple' },
];

const edges: MapEdge[] = [
  { a: 'B', b: 'D1', strength: 1, distance: 1 },
  { a: 'D1', b: 'apple', strength: 3, distance: 1 / 3 },
];

describe('layout', () => {
  it('edge rest length is proportional to map distance', () => {
    expect(restLength(1)).toBeCloseTo(DEFAULT_LAYOUT.restScale);
    expect(restLength(2)).toBeCloseTo(2 * restLength(1));
    expect(restLength(1 / 3)).toBeCloseTo(restLength(1) / 3);
  });

  it('is deterministic for identical inputs', () => {
    const first = layoutNeighborhood(nodes, edges);
    const second = layoutNeighborhood(nodes, edges);
    expect(second).toEqual(first);
  });

  it('places shorter-distance pairs closer on screen', () => {
    const placed = layoutNeighborhood(nodes, edges);
    const at = new Map(placed.map((n) => [n.id, n]));
    const gap = (x: string, y: string) =>
      Math.hypot(at.get(x)!.x - at.get(y)!.x, at.get(x)!.y - at.get(y)!.y);
    expect(gap('D1', 'apple')).toBeLessThan(gap('B', 'D1'));
  });

  it('keeps nodes inside the viewport', () => {
    for (const node of layoutNeighborhood(nodes, edges)) {
      expect(node.x).toBeGreaterThanOrEqual(20);
      expect(node.x).toBeLessThanOrEqual(DEFAULT_LAYOUT.width - 20);
      expect(node.y).toBeGreaterThanOrEqual(20);
      expect(node.y).toBeLessThanOrEqual(DEFAULT_LAYOUT.height - 20);
    }
  });
});

describe('render view models', () => {
  it('edge width grows with strength', () => {
    expect(edgeWidth(3)).toBeGreaterThan(edgeWidth(1));
    expect(edgeWidth(1)).toBeGreaterThan(0);
  });

  it('marks multi-path answers as ties', () => {
    const answer: PathAnswer = {
      version: 19,
      source: 'B',
      target: 'apple',
      best_length: 2.5,
      paths: [
        ['B', 'A', 'D1', 'apple'],
        ['B', 'A', 'D2', 'apple'],
      ],
    };
    const view = pathAnswerView(answer);
    expect(view.tied).toBe(true);
    expect(view.tieCount).toBe(2);
    expect(view.paths.map((p) => p.lengthLabel)).toEqual(['2.500000', '2.500000']);
  });

  it('renders unreachable answers as a badge, not a number', () => {
    const view = pathAnswerView({ version: 1, source: 'x', target: 'y', best_length: null, paths: [] });
    expect(view.unreachable).toBe(true);
    expect(view.paths).toEqual([]);
  });

  it('collects every edge of every tied path for highlighting', () => {
    const keys = highlightedEdges({
      version: 1,
      source: 'B',
      target: 'apple',
      best_length: 2.5,
      paths: [
        ['B', 'A', 'D1', 'apple'],
        ['B', 'A', 'D2', 'apple'],
      ],
    });
    expect(keys).toEqual(new Set(['A|B', 'A|D1', 'D1|apple', 'A|D2', 'D2|apple']));
  });
});
