// Wire types for the knowledge-map service. The explorer never computes
// strengths or distances itself: every number rendered comes from one of
// these response shapes.

export type ResourceKind = 'agent' | 'document' | 'topic';

export interface ResourceRow {
  id: string;
  kind: ResourceKind;
  label: string;
  agency?: 'human' | 'artificial';
}

export interface ResourceListing {
  version: number;
  resources: ResourceRow[];
}

export interface PerspectiveWire {
  paradigm_weights: { logic: number; mine: number; feel: number };
  trust: { default: number; per_agent: Record<string, number> };
  half_life: number | null;
  exclude_emitters: string[];
  clamp_negative: boolean;
}

export interface PathAnswer {
  version: number;
  source: string;
  target: string;
  best_length: number | null;
  paths: string[][];
}

export interface MapNode {
  id: string;
  kind: ResourceKind;
  label: string;
}

export interface MapEdge {
  a: string;
  b: string;
  strength: number;
  distance: number;
}

export interface NeighborhoodAnswer {
  origin: string;
  version: number;
  now: number;
  nodes: MapNode[];
  edges: MapEdge[];
}

export interface FeedbackAnswer {
  ids: string[];
  version: number;
}

export interface VersionAnswer {
  version: number;
}

export interface ServiceError {
  error: string;
  detail: string;
}
