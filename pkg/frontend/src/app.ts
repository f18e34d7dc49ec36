// DOM wiring for the explorer: identity picker, perspective editor, the
// neighborhood canvas, path queries and feedback actions. The app never
// aggregates anything itself — it renders service responses and re-fetches
// after every write so the loop's effect is immediately visible.

import { ApiClient } from './api.js';
import { DEFAULT_LAYOUT, layoutNeighborhood, type LaidOutNode } from './layout.js';
import { excludeSelfFromList, toWire } from './perspective.js';
import { drawNeighborhood, edgeAt, highlightedEdges, pathAnswerView } from './render.js';
import { agentsOf, documentsOf, initialState, topicsOf, type SessionState } from './state.js';
import type { NeighborhoodAnswer, PathAnswer } from './types.js';

const POLL_INTERVAL_MS = 1000;

export class ExplorerApp {
  readonly state: SessionState = initialState();
  lastAnswer: PathAnswer | null = null;
  lastNeighborhood: NeighborhoodAnswer | null = null;
  private placed: LaidOutNode[] = [];
  private retryAction: (() => Promise<void>) | null = null;
  private pollTimer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly doc: Document,
    private readonly api: ApiClient,
  ) {}

  // -- element access ------------------------------------------------------

  private el<T extends HTMLElement>(id: string): T {
    const node = this.doc.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
  }

  private input(id: string): HTMLInputElement {
    return this.el<HTMLInputElement>(id);
  }

  private select(id: string): HTMLSelectElement {
    return this.el<HTMLSelectElement>(id);
  }

  // -- lifecycle -------------------------------------------------------------

  async init(): Promise<void> {
    this.bindControls();
    await this.guard(async () => {
      await this.refreshResources();
      await this.refreshNeighborhood();
    });
  }

  start(): void {
    if (this.pollTimer) return;
    this.pollTimer = setInterval(() => void this.pollVersion(), POLL_INTERVAL_MS);
  }

  stop(): void {
    if (this.pollTimer) clearInterval(this.pollTimer);
    this.pollTimer = null;
  }

  async pollVersion(): Promise<void> {
    try {
      const { version } = await this.api.version();
      if (this.state.lastVersion !== null && version !== this.state.lastVersion) {
        this.setVersion(version);
        await this.refreshNeighborhood();
      } else {
        this.setVersion(version);
      }
      this.clearError();
    } catch (err) {
      this.showError(err, () => this.pollVersion());
    }
  }

  // -- bindings ---------------------------------------------------------------

  private bindControls(): void {
    this.select('identity').addEventListener('change', () => {
      this.state.identity = this.select('identity').value || null;
      this.syncPerspectivePreview();
      void this.guard(() => this.refreshNeighborhood());
    });
    for (const name of ['logic', 'mine', 'feel'] as const) {
      this.input(`weight-${name}`).addEventListener('input', () => {
        const value = Number(this.input(`weight-${name}`).value);
        this.state.draft[`${name}Weight`] = value;
        this.el(`weight-${name}-value`).textContent = value.toFixed(1);
        this.syncPerspectivePreview();
      });
    }
    this.input('trust-default').addEventListener('input', () => {
      this.state.draft.trustDefault = Number(this.input('trust-default').value || '1');
      this.syncPerspectivePreview();
    });
    this.el('trust-add').addEventListener('click', () => {
      const agent = this.select('trust-agent').value;
      const value = Number(this.input('trust-value').value);
      if (agent && Number.isFinite(value) && value >= 0) {
        this.state.draft.trustPerAgent[agent] = value;
        this.renderTrustTable();
        this.syncPerspectivePreview();
      }
    });
    this.input('half-life').addEventListener('input', () => {
      const raw = this.input('half-life').value.trim();
      this.state.draft.halfLife = raw === '' ? null : Number(raw);
      this.syncPerspectivePreview();
    });
    this.input('exclude-self').addEventListener('change', () => {
      this.state.draft.excludeSelf = this.input('exclude-self').checked;
      this.syncPerspectivePreview();
    });
    this.el('run-paths').addEventListener('click', () => void this.guard(() => this.runPathQuery()));
    this.el('like').addEventListener('click', () => void this.guard(() => this.emitFeedback(1)));
    this.el('dislike').addEventListener('click', () => void this.guard(() => this.emitFeedback(-1)));
    this.el('refresh').addEventListener('click', () => void this.guard(() => this.refreshNeighborhood()));
    this.el('retry').addEventListener('click', () => {
      const action = this.retryAction;
      this.clearError();
      if (action) void this.guard(action);
    });
    const canvas = this.el<HTMLCanvasElement>('map-canvas');
    canvas.addEventListener('mousemove', (ev) => this.onHover(ev));
  }

  // -- data flows --------------------------------------------------------------

  currentPerspective() {
    return toWire(this.state.draft, this.state.identity);
  }

  async refreshResources(): Promise<void> {
    const listing = await this.api.resources();
    this.state.resources = listing.resources;
    this.setVersion(listing.version);
    this.fillSelect('identity', agentsOf(this.state).filter((a) => a.agency === 'human').map((r) => r.id));
    this.fillSelect('trust-agent', agentsOf(this.state).map((r) => r.id));
    this.fillSelect('target', this.state.resources.map((r) => r.id));
    this.fillSelect('feedback-document', documentsOf(this.state).map((r) => r.id));
    this.fillSelect('feedback-topic', ['', ...topicsOf(this.state).map((r) => r.id)]);
    if (!this.state.identity) {
      const first = this.select('identity').value || null;
      this.state.identity = first;
    }
    this.syncPerspectivePreview();
  }

  async refreshNeighborhood(): Promise<void> {
    if (!this.state.identity) return;
    const radius = Number(this.input('radius').value || '3');
    const answer = await this.api.neighborhood(this.currentPerspective(), this.state.identity, radius);
    this.lastNeighborhood = answer;
    this.setVersion(answer.version);
    this.placed = layoutNeighborhood(answer.nodes, answer.edges, DEFAULT_LAYOUT);
    const canvas = this.el<HTMLCanvasElement>('map-canvas');
    const ctx = canvas.getContext('2d');
    if (ctx) {
      drawNeighborhood(ctx, answer, this.placed, highlightedEdges(this.lastAnswer));
    }
  }

  async runPathQuery(): Promise<void> {
    const target = this.select('target').value;
    const validation = this.el('query-validation');
    validation.textContent = '';
    if (!this.state.identity) {
      validation.textContent = 'pick an identity first';
      return;
    }
    if (!target || !this.state.resources.some((r) => r.id === target)) {
      validation.textContent = `unknown target ${target || '(none)'}`;
      return;
    }
    if (target === this.state.identity) {
      validation.textContent = 'source and target are the same resource';
      return;
    }
    const answer = await this.api.queryPaths(this.currentPerspective(), this.state.identity, target);
    this.lastAnswer = answer;
    this.setVersion(answer.version);
    this.renderPathAnswer(answer);
    await this.refreshNeighborhood();
  }

  async emitFeedback(polarity: 1 | -1): Promise<void> {
    const validation = this.el('feedback-validation');
    validation.textContent = '';
    if (!this.state.identity) {
      validation.textContent = 'pick an identity first';
      return;
    }
    const document = this.select('feedback-document').value;
    const topic = this.select('feedback-topic').value || null;
    if (!document) {
      validation.textContent = 'pick a document';
      return;
    }
    try {
      const result = await this.api.feedback(this.state.identity, document, topic, polarity);
      this.setVersion(result.version);
    } catch (err) {
      validation.textContent = err instanceof Error ? err.message : String(err);
      return;
    }
    await this.refreshNeighborhood();
  }

  // -- rendering ----------------------------------------------------------------

  private renderPathAnswer(answer: PathAnswer): void {
    const view = pathAnswerView(answer);
    const meta = this.el('answer-meta');
    const badge = this.el('tie-badge');
    const list = this.el<HTMLOListElement>('path-results');
    list.innerHTML = '';
    if (view.unreachable) {
      meta.textContent = 'unreachable';
      badge.textContent = '';
      return;
    }
    meta.textContent = `best length ${view.bestLengthLabel}`;
    badge.textContent = view.tied ? `${view.tieCount} tied answers` : '';
    for (const path of view.paths) {
      const item = this.doc.createElement('li');
      item.className = 'path highlighted';
      item.textContent = `${path.nodes.join(' → ')} (length ${path.lengthLabel})`;
      list.appendChild(item);
    }
  }

  private renderTrustTable(): void {
    const table = this.el('trust-table');
    table.innerHTML = '';
    for (const [agent, value] of Object.entries(this.state.draft.trustPerAgent).sort()) {
      const row = this.doc.createElement('div');
      row.className = 'trust-row';
      row.textContent = `${agent}: ${value}`;
      const remove = this.doc.createElement('button');
      remove.textContent = 'x';
      remove.addEventListener('click', () => {
        delete this.state.draft.trustPerAgent[agent];
        this.renderTrustTable();
        this.syncPerspectivePreview();
      });
      row.appendChild(remove);
      table.appendChild(row);
    }
  }

  private syncPerspectivePreview(): void {
    const wire = this.currentPerspective();
    this.el('perspective-json').textContent = JSON.stringify(wire, null, 2);
    this.input('exclude-self').checked = excludeSelfFromList(wire.exclude_emitters, this.state.identity);
  }

  private onHover(ev: MouseEvent): void {
    if (!this.lastNeighborhood) return;
    const canvas = this.el<HTMLCanvasElement>('map-canvas');
    const rect = canvas.getBoundingClientRect();
    const edge = edgeAt(this.lastNeighborhood, this.placed, ev.clientX - rect.left, ev.clientY - rect.top);
    this.el('hover-info').textContent = edge
      ? `${edge.a} — ${edge.b}: distance ${edge.distance.toFixed(6)}, strength ${edge.strength.toFixed(6)}`
      : '';
  }

  private fillSelect(id: string, values: string[]): void {
    const select = this.select(id);
    const previous = select.value;
    select.innerHTML = '';
    for (const value of values) {
      const option = this.doc.createElement('option');
      option.value = value;
      option.textContent = value === '' ? '(none)' : value;
      select.appendChild(option);
    }
    if (values.includes(previous)) {
      select.value = previous;
    }
  }

  private setVersion(version: number): void {
    this.state.lastVersion = version;
    this.el('version-banner').textContent = `graph version ${version}`;
  }

  // -- errors ---------------------------------------------------------------------

  private async guard(action: () => Promise<void>): Promise<void> {
    try {
      await action();
      this.clearError();
    } catch (err) {
      this.showError(err, action);
    }
  }

  private showError(err: unknown, retry: (() => Promise<void>) | null): void {
    this.retryAction = retry;
    const banner = this.el('error-banner');
    banner.classList.add('visible');
    this.el('error-message').textContent = err instanceof Error ? err.message : String(err);
  }

  private clearError(): void {
    this.retryAction = null;
    this.el('error-banner').classList.remove('visible');
    this.el('error-message').textContent = '';
  }
}
