// The perspective draft bound to the editor controls, and its exact
// serialization to the service's perspective JSON schema.
//
// Invariant maintained here: the exclude-self toggle holds if and only if
// the acting identity is in exclude_emitters of the submitted perspective.

import type { PerspectiveWire } from './types.js';

export interface PerspectiveDraft {
  logicWeight: number;
  mineWeight: number;
  feelWeight: number;
  trustDefault: number;
  trustPerAgent: Record<string, number>;
  halfLife: number | null;
  excludeSelf: boolean;
  extraExcluded: string[]; // manual exclusions other than the identity
  clampNegative: boolean;
}

export function defaultDraft(): PerspectiveDraft {
  return {
    logicWeight: 1,
    mineWeight: 1,
    feelWeight: 1,
    trustDefault: 1,
    trustPerAgent: {},
    halfLife: null,
    excludeSelf: false,
    extraExcluded: [],
    clampNegative: true,
  };
}

export function toWire(draft: PerspectiveDraft, identity: string | null): PerspectiveWire {
  const excluded = new Set(draft.extraExcluded);
  if (draft.excludeSelf && identity) {
    excluded.add(identity);
  } else if (identity) {
    excluded.delete(identity);
  }
  return {
    paradigm_weights: {
      logic: draft.logicWeight,
      mine: draft.mineWeight,
      feel: draft.feelWeight,
    },
    trust: { default: draft.trustDefault, per_agent: { ...draft.trustPerAgent } },
    half_life: draft.halfLife,
    exclude_emitters: [...excluded].sort(),
    clamp_negative: draft.clampNegative,
  };
}

// Reflect a manually edited exclusion list back into the toggle, keeping
// toggle and list from drifting apart.
export function excludeSelfFromList(excluded: string[], identity: string | null): boolean {
  return identity !== null && excluded.includes(identity);
}
