// Per-tab session state: who is acting, their perspective draft, and the
// last graph version any response reported.

import { defaultDraft, type PerspectiveDraft } from './perspective.js';
import type { ResourceRow } from './types.js';

export interface SessionState {
  identity: string | null;
  draft: PerspectiveDraft;
  lastVersion: number | null;
  resources: ResourceRow[];
}

export function initialState(): SessionState {
  return { identity: null, draft: defaultDraft(), lastVersion: null, resources: [] };
}

export function agentsOf(state: SessionState): ResourceRow[] {
  return state.resources.filter((r) => r.kind === 'agent');
}

export function documentsOf(state: SessionState): ResourceRow[] {
  return state.resources.filter((r) => r.kind === 'document');
}

export function topicsOf(state: SessionState): ResourceRow[] {
  return state.resources.filter((r) => r.kind === 'topic');
}
