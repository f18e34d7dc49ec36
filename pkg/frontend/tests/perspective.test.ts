import { describe, expect, it } from 'vitest';

import { defaultDraft, excludeSelfFromList, toWire } from '../src/perspective.js';

describe('perspective serialization', () => {
  it('serializes the default draft to the schema defaults', () => {
    expect(toWire(defaultDraft(), 'B')).toEqual({
      paradigm_weights: { logic: 1, mine: 1, feel: 1 },
      trust: { default: 1, per_agent: {} },
      half_life: null,
      exclude_emitters: [],
      clamp_negative: true,
    });
  });

  it('exclude-self toggle puts exactly the identity into exclude_emitters', () => {
    const draft = { ...defaultDraft(), excludeSelf: true };
    const wire = toWire(draft, 'B');
    expect(wire.exclude_emitters).toEqual(['B']);
    // everything else stays at defaults: toggling equals a manual edit
    expect(wire).toEqual({
      ...toWire(defaultDraft(), 'B'),
      exclude_emitters: ['B'],
    });
  });

  it('toggle off removes the identity but keeps manual exclusions', () => {
    const draft = { ...defaultDraft(), excludeSelf: false, extraExcluded: ['miner', 'B'] };
    expect(toWire(draft, 'B').exclude_emitters).toEqual(['miner']);
    const on = { ...draft, excludeSelf: true };
    expect(toWire(on, 'B').exclude_emitters).toEqual(['B', 'miner']);
  });

  it('round-trips the toggle from a serialized exclusion list', () => {
    expect(excludeSelfFromList(['B'], 'B')).toBe(true);
    expect(excludeSelfFromList(['miner'], 'B')).toBe(false);
    expect(excludeSelfFromList(['B'], null)).toBe(false);
  });

  it('keeps slider, trust and decay edits in the wire form', () => {
    const draft = {
      ...defaultDraft(),
      logicWeight: 0.5,
      feelWeight: 2,
      trustDefault: 0.8,
      trustPerAgent: { A: 2 },
      halfLife: 10,
      clampNegative: false,
    };
    expect(toWire(draft, null)).toEqual({
      paradigm_weights: { logic: 0.5, mine: 1, feel: 2 },
      trust: { default: 0.8, per_agent: { A: 2 } },
      half_life: 10,
      exclude_emitters: [],
      clamp_negative: false,
    });
  });
});
