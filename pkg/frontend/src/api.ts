// Thin client over the service's HTTP API — the explorer's only data source.

import type {
  FeedbackAnswer,
  NeighborhoodAnswer,
  PathAnswer,
  PerspectiveWire,
  ResourceListing,
  ServiceError,
  VersionAnswer,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, body: ServiceError | null) {
    super(body ? `${body.error}: ${body.detail}` : `HTTP ${status}`);
    this.status = status;
    this.code = body?.error ?? 'HttpError';
  }
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base: string, fetchImpl?: FetchLike) {
    this.base = base.replace(/\/$/, '');
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { 'Content-Type': 'application/json' } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      let payload: ServiceError | null = null;
      try {
        payload = (await response.json()) as ServiceError;
      } catch {
        payload = null;
      }
      throw new ApiError(response.status, payload);
    }
    return (await response.json()) as T;
  }

  version(): Promise<VersionAnswer> {
    return this.request('GET', '/version');
  }

  resources(): Promise<ResourceListing> {
    return this.request('GET', '/resources');
  }

  queryPaths(perspective: PerspectiveWire, source: string, target: string): Promise<PathAnswer> {
    return this.request('POST', '/query/paths', { perspective, source, target });
  }

  neighborhood(perspective: PerspectiveWire, origin: string, radius: number): Promise<NeighborhoodAnswer> {
    return this.request('POST', '/query/neighborhood', { perspective, origin, radius });
  }

  feedback(
    agent: string,
    document: string,
    topic: string | null,
    polarity: 1 | -1,
  ): Promise<FeedbackAnswer> {
    const body: Record<string, unknown> = { agent, document, polarity };
    if (topic) {
      body.topic = topic;
    }
    return this.request('POST', '/feedback', body);
  }
}
